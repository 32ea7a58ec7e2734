//! Minimal parser for Java type text as it appears in declarations.

use std::fmt;

/// A parsed declared type. Qualifiers and annotations are dropped; wildcard
/// bounds are replaced by the bound itself and unbounded `?` by `None`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TypeExpr {
    pub base: String,
    pub args: Vec<Option<TypeExpr>>,
    /// Array dimensions, varargs counted as one.
    pub dims: usize,
}

impl TypeExpr {
    pub fn parse(text: &str) -> Option<Self> {
        let tokens = tokenize(text)?;
        let mut parser = TypeParser { tokens, pos: 0 };
        let ty = parser.ty()?;
        (parser.pos == parser.tokens.len()).then_some(ty)
    }

    /// Element type of an array or of a registered container.
    pub fn array_element(&self) -> Option<TypeExpr> {
        (self.dims > 0).then(|| TypeExpr {
            base: self.base.clone(),
            args: self.args.clone(),
            dims: self.dims - 1,
        })
    }

    pub fn first_arg(&self) -> Option<&TypeExpr> {
        self.args.first().and_then(Option::as_ref)
    }

    pub fn without_dims(&self) -> TypeExpr {
        TypeExpr {
            dims: 0,
            ..self.clone()
        }
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.base)?;
        if !self.args.is_empty() {
            f.write_str("<")?;
            for (i, arg) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                match arg {
                    Some(t) => write!(f, "{t}")?,
                    None => f.write_str("?")?,
                }
            }
            f.write_str(">")?;
        }
        for _ in 0..self.dims {
            f.write_str("[]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Lt,
    Gt,
    Comma,
    Dims,
    Ellipsis,
    Question,
}

fn tokenize(text: &str) -> Option<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '<' => {
                out.push(Tok::Lt);
                i += 1;
            }
            '>' => {
                out.push(Tok::Gt);
                i += 1;
            }
            ',' => {
                out.push(Tok::Comma);
                i += 1;
            }
            '?' => {
                out.push(Tok::Question);
                i += 1;
            }
            '[' => {
                let close = chars[i + 1..].iter().position(|&c| c == ']')? + i + 1;
                if chars[i + 1..close].iter().any(|c| !c.is_whitespace()) {
                    return None;
                }
                out.push(Tok::Dims);
                i = close + 1;
            }
            '.' if chars.get(i + 1) == Some(&'.') && chars.get(i + 2) == Some(&'.') => {
                out.push(Tok::Ellipsis);
                i += 3;
            }
            '@' => {
                // annotation: skip the name and any parenthesised arguments
                i += 1;
                while i < chars.len() && (is_ident_char(chars[i]) || chars[i] == '.') {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_whitespace() {
                    i += 1;
                }
                if chars.get(i) == Some(&'(') {
                    let mut depth = 0;
                    while i < chars.len() {
                        match chars[i] {
                            '(' => depth += 1,
                            ')' => {
                                depth -= 1;
                                if depth == 0 {
                                    i += 1;
                                    break;
                                }
                            }
                            _ => {}
                        }
                        i += 1;
                    }
                }
            }
            c if is_ident_char(c) || is_qualifier_dot(&chars, i) => {
                let start = i;
                i += 1;
                while i < chars.len() && (is_ident_char(chars[i]) || is_qualifier_dot(&chars, i)) {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                out.push(Tok::Ident(word));
            }
            _ => return None,
        }
    }
    Some(out)
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

fn is_qualifier_dot(chars: &[char], i: usize) -> bool {
    chars[i] == '.' && chars.get(i + 1).is_some_and(|&c| is_ident_char(c) || c == '@')
}

struct TypeParser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl TypeParser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn ty(&mut self) -> Option<TypeExpr> {
        let Some(Tok::Ident(name)) = self.next() else {
            return None;
        };
        if matches!(name.as_str(), "final" | "extends" | "super") {
            return None;
        }
        let base = name.rsplit('.').next().unwrap_or(&name).to_string();
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::Lt) {
            self.pos += 1;
            if self.peek() != Some(&Tok::Gt) {
                loop {
                    args.push(self.arg()?);
                    match self.next()? {
                        Tok::Comma => continue,
                        Tok::Gt => break,
                        _ => return None,
                    }
                }
            } else {
                self.pos += 1;
            }
            // nested member type after arguments, e.g. Outer<T>.Inner
            if let Some(Tok::Ident(rest)) = self.peek().cloned() {
                if let Some(stripped) = rest.strip_prefix('.') {
                    self.pos += 1;
                    return Some(TypeExpr {
                        base: stripped.rsplit('.').next().unwrap_or(stripped).to_string(),
                        args: Vec::new(),
                        dims: self.dims(),
                    });
                }
            }
        }
        let dims = self.dims();
        Some(TypeExpr { base, args, dims })
    }

    fn dims(&mut self) -> usize {
        let mut dims = 0;
        while matches!(self.peek(), Some(Tok::Dims) | Some(Tok::Ellipsis)) {
            self.pos += 1;
            dims += 1;
        }
        dims
    }

    fn arg(&mut self) -> Option<Option<TypeExpr>> {
        if self.peek() == Some(&Tok::Question) {
            self.pos += 1;
            match self.peek() {
                Some(Tok::Ident(kw)) if kw == "extends" || kw == "super" => {
                    self.pos += 1;
                    Some(Some(self.ty()?))
                }
                _ => Some(None),
            }
        } else {
            Some(Some(self.ty()?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(text: &str) -> Option<String> {
        TypeExpr::parse(text).map(|t| t.to_string())
    }

    #[test]
    fn parses_declaration_types() {
        assert_eq!(render("String").unwrap(), "String");
        assert_eq!(render("java.util.List<String>").unwrap(), "List<String>");
        assert_eq!(
            render("Map<String, List<java.io.File>>").unwrap(),
            "Map<String,List<File>>"
        );
        assert_eq!(render("byte[]").unwrap(), "byte[]");
        assert_eq!(render("int [] []").unwrap(), "int[][]");
        assert_eq!(render("String...").unwrap(), "String[]");
        assert_eq!(
            render("Class<? extends AbstractThymeleafView>").unwrap(),
            "Class<AbstractThymeleafView>"
        );
        assert_eq!(render("List<?>").unwrap(), "List<?>");
        assert_eq!(render("@Nullable String").unwrap(), "String");
        assert_eq!(render("@Size(max = 3) List<@NotNull String>").unwrap(), "List<String>");
        assert_eq!(render("Map.Entry<K, V>").unwrap(), "Entry<K,V>");
        assert_eq!(render("List<>").unwrap(), "List");
        assert_eq!(render("Outer<T>.Inner[]").unwrap(), "Inner[]");
    }

    #[test]
    fn rejects_non_types() {
        assert!(TypeExpr::parse("IOException | RuntimeException").is_none());
        assert!(TypeExpr::parse("").is_none());
        assert!(TypeExpr::parse("List<String").is_none());
    }

    #[test]
    fn element_of_arrays() {
        let t = TypeExpr::parse("byte[]").unwrap();
        assert_eq!(t.array_element().unwrap().to_string(), "byte");
        assert!(TypeExpr::parse("byte").unwrap().array_element().is_none());
    }
}
