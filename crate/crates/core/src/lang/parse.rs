use super::Term;
use crate::error::ParseError;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(b) if b == byte => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(self.error(format!(
                "expected '{}', found '{}'",
                byte as char, b as char
            ))),
            None => Err(self.error(format!("expected '{}', found end of input", byte as char))),
        }
    }

    fn expr(&mut self) -> Result<Term, ParseError> {
        let mut factors = vec![self.factor()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok(Term::star(factors))
    }

    fn factor(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(b'c') => {
                self.pos += 1;
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                if start == self.pos {
                    return Ok(Term::Leaf(1));
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let n: usize = digits.parse().map_err(|_| ParseError {
                    position: start,
                    message: format!("chain length {digits} is too large"),
                })?;
                if n == 0 {
                    return Err(ParseError {
                        position: start,
                        message: "chain length must be at least 1".into(),
                    });
                }
                Ok(Term::Leaf(n))
            }
            Some(b'D') => {
                self.pos += 1;
                self.expect(b'(')?;
                let child = self.expr()?;
                self.expect(b')')?;
                Ok(Term::d(child))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b) => Err(self.error(format!("unexpected '{}'", b as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

pub(super) fn parse(text: &str) -> Result<Term, ParseError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    if parser.peek().is_none() {
        return Err(parser.error("empty expression"));
    }
    let term = parser.expr()?;
    if let Some(b) = parser.peek() {
        return Err(parser.error(format!("trailing input starting with '{}'", b as char)));
    }
    Ok(term)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        let p = Term::point();
        assert_eq!(
            parse("c * c").unwrap(),
            Term::Star(vec![p.clone(), p.clone()])
        );
        assert_eq!(
            parse("(c*c)*c").unwrap(),
            Term::Star(vec![p.clone(), p.clone(), p.clone()])
        );
        assert_eq!(parse(" c7 ").unwrap(), Term::Leaf(7));
        assert_eq!(parse("((D(c)))").unwrap(), Term::d(p.clone()));
        let worked = parse("D(D(D(D(c)*c*D(c)))*c3)").unwrap();
        let inner = Term::star([Term::d(p.clone()), p.clone(), Term::d(p.clone())]);
        let expected = Term::d(Term::star([Term::d(Term::d(inner)), Term::Leaf(3)]));
        assert_eq!(worked, expected);
    }

    #[test]
    fn printing() {
        let p = Term::point();
        assert_eq!(Term::Star(vec![p.clone(), p.clone()]).print(), "c*c");
        assert_eq!(Term::d(p).print(), "D(c)");
        let text = "D(D(D(D(c)*c*D(c)))*c3)";
        assert_eq!(parse(text).unwrap().print(), text);
    }

    #[test]
    fn rejects_malformed_input() {
        let cases = [
            ("", 0),
            ("   ", 3),
            ("c0", 1),
            ("c*", 2),
            ("D c", 2),
            ("D(c", 3),
            ("(c))", 3),
            ("c c", 2),
            ("x", 0),
            ("*c", 0),
            ("D()", 2),
            ("c99999999999999999999999", 1),
        ];
        for (text, position) in cases {
            let err = parse(text).unwrap_err();
            assert_eq!(err.position, position, "{text:?}: {err}");
        }
    }

    fn arb_term() -> impl Strategy<Value = Term> {
        let leaf = (1usize..5).prop_map(Term::Leaf);
        leaf.prop_recursive(5, 40, 4, |inner| {
            prop_oneof![
                inner.clone().prop_map(Term::d),
                prop::collection::vec(inner, 2..4).prop_map(Term::star),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(term in arb_term()) {
            prop_assert!(term.is_normal_form());
            prop_assert_eq!(parse(&term.print()).unwrap(), term);
        }
    }
}
