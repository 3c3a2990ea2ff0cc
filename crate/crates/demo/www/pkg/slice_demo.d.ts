/* tslint:disable */
/* eslint-disable */

/**
 * Irreducible components (0 marks an absent variable) and the Alexander
 * dual with respect to the lcm of the generators.
 */
export function decompose(text: string, strategy: string): string;

/**
 * Maximizes `weights . d` over the maximal standard monomials `d`.
 */
export function optimize(text: string, weights: string, use_bound: boolean): string;

/**
 * A random minimal ideal in the text format.
 */
export function random(n: number, generators: number, max_exponent: number, seed: number): string;

/**
 * Minimal generators and maximal standard monomials, enough to draw the
 * staircase of a two-variable ideal.
 */
export function staircase(text: string, strategy: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly decompose: (a: number, b: number, c: number, d: number) => [number, number];
    readonly optimize: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly random: (a: number, b: number, c: number, d: number) => [number, number];
    readonly staircase: (a: number, b: number, c: number, d: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
