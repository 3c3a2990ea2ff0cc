//! The plain-text ideal format.
//!
//! ```text
//! # comment lines and blank lines are ignored
//! 2 3        <- variable count n, row count k
//! 2 0        <- k rows of n exponents
//! 1 1
//! 0 3
//! ```
//!
//! Output uses the same layout, so results can be read back in.

use std::fmt::{Display, Write as _};

use num_bigint::BigUint;

use crate::compress::BigIdeal;
use crate::error::{Error, Result};

/// A parsed ideal file.
#[derive(Clone, Debug)]
pub struct ParsedIdeal {
    pub ideal: BigIdeal,
    /// Rows in the file that were not minimal generators (duplicates or
    /// multiples of other rows).
    pub redundant_rows: usize,
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_row(line: usize, text: &str) -> Result<Vec<BigUint>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<BigUint>()
                .map_err(|_| parse_error(line, format!("`{tok}` is not a non-negative integer")))
        })
        .collect()
}

/// Parses rows of exponent vectors under an `n k` header.
pub fn parse_rows(text: &str) -> Result<(usize, Vec<Vec<BigUint>>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| parse_error(1, "missing `n k` header"))?;
    let header: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_error(hline, format!("`{t}` is not a count"))))
        .collect::<Result<_>>()?;
    let [n, k] = header[..] else {
        return Err(parse_error(hline, "header must be `n k`"));
    };
    if n == 0 {
        return Err(parse_error(hline, "the number of variables must be positive"));
    }
    let mut rows = Vec::with_capacity(k);
    for (line, text) in lines {
        if rows.len() == k {
            return Err(parse_error(line, format!("more than the {k} rows announced in the header")));
        }
        let row = parse_row(line, text)?;
        if row.len() != n {
            return Err(parse_error(line, format!("expected {n} exponents, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() < k {
        let last = text.lines().count();
        return Err(parse_error(last, format!("expected {k} rows, found {}", rows.len())));
    }
    Ok((n, rows))
}

/// Parses and minimizes an ideal.
pub fn parse_ideal(text: &str) -> Result<ParsedIdeal> {
    let (n, rows) = parse_rows(text)?;
    let count = rows.len();
    let ideal = BigIdeal::from_generators(n, rows)?;
    Ok(ParsedIdeal { redundant_rows: count - ideal.len(), ideal })
}

/// Parses a comma- or space-separated exponent vector such as `2,3`.
pub fn parse_vector<T: std::str::FromStr>(text: &str) -> Result<Vec<T>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().map_err(|_| Error::Usage(format!("`{t}` is not a valid vector entry"))))
        .collect()
}

/// Formats rows under an `n k` header.
pub fn format_rows<T, R>(n: usize, rows: impl IntoIterator<Item = R>) -> String
where
    T: Display,
    R: AsRef<[T]>,
{
    let mut body = String::new();
    let mut k = 0;
    for row in rows {
        let row = row.as_ref();
        for (j, e) in row.iter().enumerate() {
            if j > 0 {
                body.push(' ');
            }
            write!(body, "{e}").unwrap();
        }
        body.push('\n');
        k += 1;
    }
    format!("{n} {k}\n{body}")
}

pub fn format_ideal(ideal: &BigIdeal) -> String {
    format_rows(ideal.n(), ideal.generators())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_blank_lines() {
        let p = parse_ideal("# example\n\n2 3\n2 0\n# between rows\n1 1\n0 3\n").unwrap();
        assert_eq!(p.ideal.len(), 3);
        assert_eq!(p.redundant_rows, 0);
        assert_eq!(format_ideal(&p.ideal), "2 3\n0 3\n1 1\n2 0\n");
    }

    #[test]
    fn reports_redundant_rows() {
        let p = parse_ideal("2 3\n1 1\n2 2\n1 1\n").unwrap();
        assert_eq!(p.ideal.len(), 1);
        assert_eq!(p.redundant_rows, 2);
    }

    #[test]
    fn accepts_huge_exponents() {
        let p = parse_ideal("1 1\n123456789012345678901234567890\n").unwrap();
        assert_eq!(p.ideal.generators()[0][0].to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("", 1),
            ("2\n", 1),
            ("2 1\n1 x\n", 2),
            ("2 1\n1 2 3\n", 2),
            ("2 1\n1 2\n3 4\n", 3),
            ("2 2\n1 2\n", 2),
            ("0 0\n", 1),
            ("2 1\n-1 2\n", 2),
        ];
        for (text, line) in cases {
            match parse_ideal(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn zero_ideal_round_trips() {
        let p = parse_ideal("3 0\n").unwrap();
        assert!(p.ideal.is_empty());
        assert_eq!(format_ideal(&p.ideal), "3 0\n");
    }

    #[test]
    fn vectors() {
        assert_eq!(parse_vector::<i64>("1,-2, 3").unwrap(), vec![1, -2, 3]);
        assert!(parse_vector::<u32>("1,a").is_err());
    }
}
