//! Parser for builtin fan expressions:
//! `projective_space(d)`, `hirzebruch(a)`, `stacky_p1(a,b)`, `product(f,g)`.

use immaculatum::fan::{builtins, StackyFan};

pub fn parse_builtin(input: &str) -> Result<StackyFan, String> {
    let mut parser = Parser {
        src: input.trim(),
        pos: 0,
    };
    let fan = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(format!(
            "unexpected trailing input at byte {}: {:?}",
            parser.pos,
            &parser.src[parser.pos..]
        ));
    }
    Ok(fan)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: char) -> Result<(), String> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len_utf8();
            Ok(())
        } else {
            Err(format!("expected {token:?} at byte {}", self.pos))
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let end = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        self.pos += end;
        rest[..end].to_string()
    }

    fn integer(&mut self) -> Result<i64, String> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let end = rest
            .char_indices()
            .take_while(|(i, c)| c.is_ascii_digit() || (*i == 0 && *c == '-'))
            .count();
        if end == 0 {
            return Err(format!("expected an integer at byte {}", self.pos));
        }
        let token = &rest[..end];
        self.pos += end;
        token
            .parse::<i64>()
            .map_err(|e| format!("invalid integer {token:?}: {e}"))
    }

    fn expr(&mut self) -> Result<StackyFan, String> {
        let name = self.ident();
        self.eat('(')?;
        let fan = match name.as_str() {
            "projective_space" => {
                let d = self.integer()?;
                if d < 1 {
                    return Err("projective_space needs dimension >= 1".into());
                }
                builtins::projective_space(d as usize).map_err(|e| e.to_string())?
            }
            "hirzebruch" => {
                let a = self.integer()?;
                builtins::hirzebruch(a).map_err(|e| e.to_string())?
            }
            "stacky_p1" => {
                let a = self.integer()?;
                self.eat(',')?;
                let b = self.integer()?;
                builtins::stacky_p1(a, b).map_err(|e| e.to_string())?
            }
            "product" => {
                let f = self.expr()?;
                self.eat(',')?;
                let g = self.expr()?;
                builtins::product(&f, &g)
            }
            other => {
                return Err(format!(
                    "unknown builtin {other:?}; expected projective_space, hirzebruch, \
                     stacky_p1 or product"
                ))
            }
        };
        self.eat(')')?;
        Ok(fan)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_products() {
        let fan = parse_builtin("product(stacky_p1(2,3),projective_space(1))").unwrap();
        assert_eq!(fan.ray_count(), 4);
        assert_eq!(fan.dim(), 2);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_builtin("weighted(2,3)").is_err());
        assert!(parse_builtin("projective_space(2)x").is_err());
        assert!(parse_builtin("stacky_p1(2)").is_err());
    }
}
