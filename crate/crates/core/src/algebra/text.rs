//! Polynomial text format: `coeff*x1^e1*...*xn^en` terms joined by `+`,
//! descending graded-lex order. The zero polynomial prints as `0`.

use super::{AlgebraError, Field, Monomial, MultiPoly};

/// Variable naming used when printing or parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyText {
    names: Vec<String>,
}

impl PolyText {
    pub fn new(names: Vec<String>) -> Self {
        PolyText { names }
    }

    /// Names `{prefix}1 .. {prefix}n`.
    pub fn indexed(prefix: &str, n: usize) -> Self {
        Self::new((1..=n).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn format(&self, poly: &MultiPoly) -> String {
        assert_eq!(poly.nvars(), self.names.len(), "naming arity");
        if poly.is_zero() {
            return "0".to_string();
        }
        let field = poly.field();
        let parts: Vec<String> = poly
            .terms()
            .rev()
            .map(|(m, c)| {
                let mut s = field.format_elem(c);
                for (i, &e) in m.exps().iter().enumerate() {
                    match e {
                        0 => {}
                        1 => {
                            s.push('*');
                            s.push_str(&self.names[i]);
                        }
                        _ => s.push_str(&format!("*{}^{}", self.names[i], e)),
                    }
                }
                s
            })
            .collect();
        parts.join("+")
    }

    pub fn parse(&self, field: &Field, s: &str) -> Result<MultiPoly, AlgebraError> {
        let nv = self.names.len();
        let mut out = MultiPoly::zero(field, nv);
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(AlgebraError::Parse("empty polynomial".into()));
        }
        for term in split_top_level(&s, '+') {
            if term.is_empty() {
                return Err(AlgebraError::Parse(format!("empty term in {s:?}")));
            }
            let mut coeff = field.one();
            let mut mono = Monomial::one(nv);
            for (k, factor) in term.split('*').enumerate() {
                let starts_numeric = factor.starts_with('(')
                    || factor.chars().next().is_some_and(|c| c.is_ascii_digit());
                if starts_numeric {
                    if k != 0 {
                        return Err(AlgebraError::Parse(format!(
                            "coefficient must lead the term: {term:?}"
                        )));
                    }
                    coeff = field.parse_elem(factor)?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<u32>()
                            .map_err(|err| AlgebraError::Parse(format!("{e:?}: {err}")))?,
                    ),
                    None => (factor, 1),
                };
                let idx = self
                    .names
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| AlgebraError::Parse(format!("unknown variable {name:?}")))?;
                mono.0[idx] += exp;
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// Parse with default names `x1..xn`.
pub fn parse_poly(field: &Field, nvars: usize, s: &str) -> Result<MultiPoly, AlgebraError> {
    PolyText::indexed("x", nvars).parse(field, s)
}

/// Parse a header line `F p` or `F p^k`, returning `(p, k)`.
pub fn parse_field_header(line: &str) -> Result<(u64, u32), AlgebraError> {
    let rest = line
        .trim()
        .strip_prefix('F')
        .ok_or_else(|| AlgebraError::Parse(format!("field header must start with F: {line:?}")))?
        .trim();
    let bad = |e: std::num::ParseIntError| AlgebraError::Parse(format!("{line:?}: {e}"));
    match rest.split_once('^') {
        Some((p, k)) => Ok((p.trim().parse().map_err(bad)?, k.trim().parse().map_err(bad)?)),
        None => Ok((rest.parse().map_err(bad)?, 1)),
    }
}

impl MultiPoly {
    /// Canonical text with variables `{prefix}1 .. {prefix}n`.
    pub fn to_text(&self, prefix: &str) -> String {
        PolyText::indexed(prefix, self.nvars()).format(self)
    }
}
