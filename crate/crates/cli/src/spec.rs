use std::fmt;
use std::path::PathBuf;

use pregular_core::construct::GroupSpec;

/// A syntax or domain error, with the 1-based column it refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for SpecError {}

impl SpecError {
    /// The message followed by the input with a caret under the column.
    pub fn annotate(&self, text: &str) -> String {
        format!("{self}\n  {text}\n  {}^", " ".repeat(self.column - 1))
    }
}

/// Parses a group spec such as `DP(A(5),C(7))` and checks its parameters.
pub fn parse_spec(text: &str) -> Result<GroupSpec, SpecError> {
    let mut p = Parser { src: text, pos: 0 };
    p.skip_ws();
    let spec = p.spec(false)?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(spec)
}

/// Canonical text of a spec; `parse_spec(&render(s))` gives back `s`.
pub fn render(spec: &GroupSpec) -> String {
    spec.to_string()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error_at(&self, pos: usize, message: impl Into<String>) -> SpecError {
        SpecError {
            column: self.src[..pos].chars().count() + 1,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> SpecError {
        self.error_at(self.pos, message)
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek().filter(|c| c.is_whitespace()) {
            self.pos += c.len_utf8();
        }
    }

    fn expect(&mut self, want: char) -> Result<(), SpecError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{want}', found '{c}'"))),
            None => Err(self.error(format!("expected '{want}', found end of input"))),
        }
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        while let Some(c) = self.peek().filter(|c| c.is_ascii_alphanumeric()) {
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn number(&mut self) -> Result<u64, SpecError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            self.pos += c.len_utf8();
        }
        if start == self.pos {
            return Err(match self.peek() {
                Some(c) => self.error(format!("expected a number, found '{c}'")),
                None => self.error("expected a number, found end of input"),
            });
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.error_at(start, "number out of range"))
    }

    /// `(n1,n2,...)` with exactly `arity` entries.
    fn args(&mut self, name: &str, arity: usize) -> Result<Vec<(usize, u64)>, SpecError> {
        self.expect('(')?;
        let mut out = Vec::with_capacity(arity);
        loop {
            self.skip_ws();
            let at = self.pos;
            out.push((at, self.number()?));
            self.skip_ws();
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(')') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.error("expected ',' or ')'")),
            }
        }
        if out.len() != arity {
            let s = if arity == 1 { "" } else { "s" };
            return Err(self.error_at(
                out[0].0,
                format!("{name} takes {arity} argument{s}, got {}", out.len()),
            ));
        }
        Ok(out)
    }

    fn fixed(&self, arg: (usize, u64), name: &str, want: u64) -> Result<(), SpecError> {
        if arg.1 == want {
            Ok(())
        } else {
            Err(self.error_at(arg.0, format!("{name} is only defined for n = {want}")))
        }
    }

    fn spec(&mut self, nested: bool) -> Result<GroupSpec, SpecError> {
        use GroupSpec::*;
        self.skip_ws();
        let start = self.pos;
        if self.src[self.pos..].starts_with("file:") {
            self.pos += 5;
            let rest = &self.src[self.pos..];
            let len = if nested {
                rest.find([',', ')']).unwrap_or(rest.len())
            } else {
                rest.len()
            };
            let path = rest[..len].trim();
            if path.is_empty() {
                return Err(self.error("file: needs a path"));
            }
            self.pos += len;
            return Ok(FromFile(PathBuf::from(path)));
        }
        let name = self.ident().to_string();
        if name.is_empty() {
            return Err(match self.peek() {
                Some(c) => self.error(format!("expected a group name, found '{c}'")),
                None => self.error("expected a group name, found end of input"),
            });
        }
        let spec = match name.as_str() {
            "DP" => {
                self.expect('(')?;
                let mut parts = vec![self.spec(true)?];
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some(',') => {
                            self.pos += 1;
                            parts.push(self.spec(true)?);
                        }
                        Some(')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.error("expected ',' or ')'")),
                    }
                }
                DirectProduct(parts)
            }
            "S" => Symmetric(self.args(&name, 1)?[0].1),
            "A" => Alternating(self.args(&name, 1)?[0].1),
            "C" => Cyclic(self.args(&name, 1)?[0].1),
            "D" => Dihedral(self.args(&name, 1)?[0].1),
            "M" => Mathieu(self.args(&name, 1)?[0].1),
            "Frob" => MersenneFrobenius(self.args(&name, 1)?[0].1),
            "PL2" => PLengthTwo(self.args(&name, 1)?[0].1),
            "E" => {
                let a = self.args(&name, 2)?;
                ElemAbelian {
                    p: a[0].1,
                    k: a[1].1,
                }
            }
            "PSL" => {
                let a = self.args(&name, 2)?;
                Psl {
                    n: a[0].1,
                    q: a[1].1,
                }
            }
            "PGL" | "SL" => {
                let a = self.args(&name, 2)?;
                self.fixed(a[0], &name, 2)?;
                if name == "PGL" {
                    Pgl2(a[1].1)
                } else {
                    Sl2(a[1].1)
                }
            }
            "PSU" => {
                let a = self.args(&name, 2)?;
                self.fixed(a[0], &name, 3)?;
                Psu3(a[1].1)
            }
            "PSp" => {
                let a = self.args(&name, 2)?;
                self.fixed(a[0], &name, 4)?;
                Psp4(a[1].1)
            }
            "Aff" => {
                let a = self.args(&name, 3)?;
                AffineFrobenius {
                    r: a[0].1,
                    a: a[1].1,
                    p: a[2].1,
                }
            }
            "CExt" => {
                let a = self.args(&name, 3)?;
                CyclicExt {
                    n: a[0].1,
                    m: a[1].1,
                    e: a[2].1,
                }
            }
            _ => return Err(self.error_at(start, format!("unknown group '{name}'"))),
        };
        // Products validate their factors as they are parsed.
        if !matches!(spec, DirectProduct(_)) {
            spec.validate().map_err(|e| {
                let msg = e.to_string();
                let msg = msg.strip_prefix("invalid parameter: ").unwrap_or(&msg);
                self.error_at(start, msg)
            })?;
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pregular_core::construct::catalog;
    use GroupSpec::*;

    #[test]
    fn simple_specs() {
        assert_eq!(parse_spec("A(5)").unwrap(), Alternating(5));
        assert_eq!(parse_spec(" PSL( 2 , 7 ) ").unwrap(), Psl { n: 2, q: 7 });
        assert_eq!(
            parse_spec("DP(A(5),C(7))").unwrap(),
            DirectProduct(vec![Alternating(5), Cyclic(7)])
        );
        assert_eq!(parse_spec("PSp(4,3)").unwrap(), Psp4(3));
        assert_eq!(
            parse_spec("DP(file:gens.txt,C(2))").unwrap(),
            DirectProduct(vec![FromFile("gens.txt".into()), Cyclic(2)])
        );
    }

    #[test]
    fn domain_errors_name_the_rule() {
        let e = parse_spec("PSL(2,6)").unwrap_err();
        assert_eq!(e.column, 1);
        assert!(e.message.contains("6 is not a prime power"), "{e}");
        let e = parse_spec("DP(C(2),M(13))").unwrap_err();
        assert_eq!(e.column, 9);
        assert!(e.message.contains("M(n)"), "{e}");
        let e = parse_spec("PGL(3,4)").unwrap_err();
        assert_eq!(e.column, 5);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_spec("Q(3)").unwrap_err();
        assert_eq!((e.column, e.message.as_str()), (1, "unknown group 'Q'"));
        let e = parse_spec("A(5").unwrap_err();
        assert_eq!(e.column, 4);
        let e = parse_spec("E(2)").unwrap_err();
        assert!(e.message.contains("takes 2 arguments"), "{e}");
        let e = parse_spec("A(5))").unwrap_err();
        assert_eq!(e.column, 5);
        let e = parse_spec("A(x)").unwrap_err();
        assert_eq!(e.column, 3);
        assert!(e.annotate("A(x)").ends_with("\n    ^"));
    }

    #[test]
    fn catalog_round_trips() {
        for spec in catalog() {
            let text = render(&spec);
            assert_eq!(parse_spec(&text).unwrap(), spec, "{text}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn leaf() -> impl Strategy<Value = GroupSpec> {
            proptest::sample::select(catalog())
        }

        fn nested() -> impl Strategy<Value = GroupSpec> {
            leaf().prop_recursive(3, 12, 4, |inner| {
                proptest::collection::vec(inner, 1..4).prop_map(DirectProduct)
            })
        }

        proptest! {
            #[test]
            fn render_then_parse_is_identity(spec in nested()) {
                let text = render(&spec);
                prop_assert_eq!(parse_spec(&text).unwrap(), spec);
            }

            #[test]
            fn whitespace_is_ignored(spec in nested()) {
                let spaced = render(&spec).replace(',', " , ").replace('(', " ( ");
                prop_assert_eq!(parse_spec(&spaced).unwrap(), spec);
            }

            #[test]
            fn garbage_never_panics(text in "[A-Za-z(),0-9 ]{0,16}") {
                let _ = parse_spec(&text);
            }
        }
    }
}
