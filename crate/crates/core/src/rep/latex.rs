//! LaTeX rendering: `array` matrices with `.` for zeros.

use num_traits::{One, Signed};

use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar};

fn rational_latex(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

pub fn scalar_latex(s: &Scalar) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (r, p) in s.terms() {
        for (k, c) in p.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            let mut body = String::new();
            let bare = r != 1 || k != 0;
            if !(bare && mag.is_one()) {
                body.push_str(&rational_latex(&mag));
            }
            if r != 1 {
                body.push_str(&format!("\\sqrt{{{r}}}"));
            }
            match k {
                0 => {}
                1 => body.push('z'),
                _ => body.push_str(&format!("z^{{{k}}}")),
            }
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
    }
    out
}

pub fn matrix_latex(m: &Matrix<Scalar>) -> String {
    let cols = "c".repeat(m.cols());
    let rows: Vec<String> = m
        .to_dense()
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| if s.is_zero() { ".".to_string() } else { scalar_latex(s) })
                .collect::<Vec<_>>()
                .join(" & ")
        })
        .collect();
    format!("\\left(\\begin{{array}}{{{cols}}}\n{}\n\\end{{array}}\\right)", rows.join(" \\\\\n"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dotted_entries() {
        let s: Scalar = "-5/3 * sqrt(6) * z^2".parse().unwrap();
        assert_eq!(scalar_latex(&s), "-\\frac{5}{3}\\sqrt{6}z^{2}");
        let t: Scalar = "1 + -1 * z".parse().unwrap();
        assert_eq!(scalar_latex(&t), "1 - z");
    }
}
