//! The plain-text matrix file format.
//!
//! ```text
//! field 2              # or: field 2^2 1 1 1  (p^m, then monic modulus c0..cm)
//! matrix 2 3
//! 0 1 1                # entry (1,1): z + z^2, ascending coefficients
//! 0                    # the zero polynomial
//! ...
//! ```
//!
//! Extension-field coefficients are tuples `(c0,...,c{m-1})`.

use std::fmt::Write as _;

use mdpconv::{FieldElement, FieldSpec, Poly, PolyMatrix};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFile {
    pub matrix: PolyMatrix,
}

impl MatrixFile {
    pub fn new(matrix: PolyMatrix) -> Self {
        Self { matrix }
    }

    pub fn field(&self) -> &FieldSpec {
        self.matrix.field()
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let Some((no, header)) = lines.next() else {
            return err(1, "empty file, expected a `field` line");
        };
        let field = parse_field(no, header)?;

        let Some((no, shape)) = lines.next() else {
            return err(no + 1, "missing `matrix <rows> <cols>` line");
        };
        let (rows, cols) = parse_shape(no, shape)?;

        let mut entries = Vec::with_capacity(rows * cols);
        let mut last = no;
        for (no, line) in lines {
            if entries.len() == rows * cols {
                return err(no, format!("unexpected extra entry; the matrix has {} entries", rows * cols));
            }
            entries.push(parse_entry(no, line, &field)?);
            last = no;
        }
        if entries.len() < rows * cols {
            return err(
                last + 1,
                format!("expected {} entries, found {}", rows * cols, entries.len()),
            );
        }
        let matrix = PolyMatrix::new(&field, rows, cols, entries).map_err(|e| ParseError { line: no, message: e.to_string() })?;
        Ok(Self { matrix })
    }

    /// Canonical text: no comments, trimmed coefficient lists, `0` for zero.
    pub fn to_text(&self) -> String {
        let f = self.field();
        let mut out = String::new();
        if f.is_prime_field() {
            writeln!(out, "field {}", f.characteristic()).unwrap();
        } else {
            let modulus: Vec<String> = f.modulus().iter().map(u32::to_string).collect();
            writeln!(out, "field {}^{} {}", f.characteristic(), f.degree(), modulus.join(" ")).unwrap();
        }
        writeln!(out, "matrix {} {}", self.matrix.rows(), self.matrix.cols()).unwrap();
        for p in self.matrix.entries() {
            out.push_str(&entry_text(p));
            out.push('\n');
        }
        out
    }
}

/// One entry line: ascending coefficients separated by spaces.
pub fn entry_text(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let f = p.field();
    p.coeffs().iter().map(|&c| element_text(f, c)).collect::<Vec<_>>().join(" ")
}

pub fn element_text(f: &FieldSpec, c: FieldElement) -> String {
    if f.is_prime_field() {
        c.index().to_string()
    } else {
        let parts: Vec<String> = f.coeffs(c).iter().map(u32::to_string).collect();
        format!("({})", parts.join(","))
    }
}

fn parse_int(line: usize, tok: &str, what: &str) -> Result<u64, ParseError> {
    tok.parse().or_else(|_| err(line, format!("invalid {what} `{tok}`")))
}

fn parse_field(line: usize, text: &str) -> Result<FieldSpec, ParseError> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    if toks.first() != Some(&"field") || toks.len() < 2 {
        return err(line, "expected `field <p>` or `field <p>^<m> <c0> ... <cm>`");
    }
    let to_err = |e: mdpconv::Error| ParseError { line, message: e.to_string() };
    match toks[1].split_once('^') {
        None => {
            if toks.len() != 2 {
                return err(line, "a prime field line takes no modulus");
            }
            let p = parse_int(line, toks[1], "characteristic")?;
            let p = u32::try_from(p).or_else(|_| err(line, format!("characteristic {p} is too large")))?;
            FieldSpec::prime(p).map_err(to_err)
        }
        Some((p, m)) => {
            let p = parse_int(line, p, "characteristic")?;
            let m = parse_int(line, m, "extension degree")?;
            let (p, m) = match (u32::try_from(p), u32::try_from(m)) {
                (Ok(p), Ok(m)) => (p, m),
                _ => return err(line, "field parameters are too large"),
            };
            let coeffs = &toks[2..];
            if coeffs.len() != m as usize + 1 {
                return err(line, format!("expected {} modulus coefficients, found {}", m + 1, coeffs.len()));
            }
            let modulus: Vec<u32> = coeffs
                .iter()
                .map(|t| {
                    let c = parse_int(line, t, "modulus coefficient")?;
                    u32::try_from(c).or_else(|_| err(line, format!("modulus coefficient {c} is too large")))
                })
                .collect::<Result<_, _>>()?;
            FieldSpec::new(p, m, modulus).map_err(to_err)
        }
    }
}

fn parse_shape(line: usize, text: &str) -> Result<(usize, usize), ParseError> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "matrix" {
        return err(line, "expected `matrix <rows> <cols>`");
    }
    let rows = parse_int(line, toks[1], "row count")? as usize;
    let cols = parse_int(line, toks[2], "column count")? as usize;
    if rows == 0 || cols == 0 {
        return err(line, "matrix dimensions must be positive");
    }
    Ok((rows, cols))
}

fn parse_prime_coeff(line: usize, tok: &str, p: u32) -> Result<u32, ParseError> {
    let c = parse_int(line, tok, "coefficient")?;
    if c >= p as u64 {
        return err(line, format!("coefficient {c} is not in [0, {p})"));
    }
    Ok(c as u32)
}

fn parse_entry(line: usize, text: &str, field: &FieldSpec) -> Result<Poly, ParseError> {
    let p = field.characteristic();
    if field.is_prime_field() {
        let coeffs: Vec<FieldElement> = text
            .split_whitespace()
            .map(|t| parse_prime_coeff(line, t, p).map(|c| field.element(c).expect("below p")))
            .collect::<Result<_, _>>()?;
        return Ok(Poly::new(field, coeffs));
    }
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "0" {
        return Ok(Poly::zero(field));
    }
    let m = field.degree() as usize;
    let mut coeffs = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return err(line, format!("expected `(` at `{rest}`"));
        };
        let Some((inner, tail)) = body.split_once(')') else {
            return err(line, "unclosed `(`");
        };
        let parts: Vec<u32> = inner.split(',').map(|t| parse_prime_coeff(line, t, p)).collect::<Result<_, _>>()?;
        if parts.len() != m {
            return err(line, format!("element `({inner})` needs {m} components"));
        }
        coeffs.push(field.from_coeffs(&parts).map_err(|e| ParseError { line, message: e.to_string() })?);
        rest = tail;
    }
    Ok(Poly::new(field, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "\
# rate 1/3 example
field 2
matrix 2 3
0 1 1
0
1 1

0
1 1   # (1+z)
1 1
";

    #[test]
    fn parses_and_prints() {
        let mf = MatrixFile::parse(EXAMPLE).unwrap();
        assert_eq!(mf.matrix.rows(), 2);
        assert_eq!(mf.matrix.get(0, 0).to_string(), "z + z^2");
        assert!(mf.matrix.get(0, 1).is_zero());
        let text = mf.to_text();
        assert_eq!(text, "field 2\nmatrix 2 3\n0 1 1\n0\n1 1\n0\n1 1\n1 1\n");
        assert_eq!(MatrixFile::parse(&text).unwrap(), mf);
    }

    #[test]
    fn extension_fields() {
        let text = "field 2^2 1 1 1\nmatrix 1 2\n(0,1) (1,1)\n0\n";
        let mf = MatrixFile::parse(text).unwrap();
        assert_eq!(mf.field().size(), 4);
        assert_eq!(mf.to_text(), text);
        assert_eq!(mf.matrix.get(0, 0).degree(), Some(1));
    }

    #[test]
    fn trailing_zero_coefficients_are_dropped() {
        let mf = MatrixFile::parse("field 3\nmatrix 1 2\n1 2 0\n0 0\n").unwrap();
        assert_eq!(mf.to_text(), "field 3\nmatrix 1 2\n1 2\n0\n");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("", 1),
            ("field 4\nmatrix 1 1\n1\n", 1),
            ("field 2\nmatrix 1\n", 2),
            ("field 2\nmatrix 1 2\n1\n", 4),
            ("field 2\nmatrix 1 1\n1\n1\n", 4),
            ("field 3\nmatrix 1 1\n\n# c\n1 3\n", 5),
            ("field 2^2 1 1 1\nmatrix 1 1\n(1,1,1)\n", 3),
            ("field 2^2 1 0 1\nmatrix 1 1\n1\n", 1),
            ("field 5\nmatrix 1 1\nx\n", 3),
        ];
        for (text, line) in cases {
            let e = MatrixFile::parse(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
        }
    }
}
