use std::fmt;

use super::Alphabet;
use crate::error::ModelError;

/// Regular-expression syntax tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RegexAst {
    EmptySet,
    Epsilon,
    Symbol(char),
    Concat(Box<RegexAst>, Box<RegexAst>),
    Union(Box<RegexAst>, Box<RegexAst>),
    Star(Box<RegexAst>),
}

impl RegexAst {
    pub fn concat(l: RegexAst, r: RegexAst) -> RegexAst {
        RegexAst::Concat(Box::new(l), Box::new(r))
    }

    pub fn union(l: RegexAst, r: RegexAst) -> RegexAst {
        RegexAst::Union(Box::new(l), Box::new(r))
    }

    pub fn star(e: RegexAst) -> RegexAst {
        RegexAst::Star(Box::new(e))
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            RegexAst::EmptySet | RegexAst::Epsilon | RegexAst::Symbol(_) => 1,
            RegexAst::Concat(l, r) | RegexAst::Union(l, r) => 1 + l.size() + r.size(),
            RegexAst::Star(e) => 1 + e.size(),
        }
    }

    fn write_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        match self {
            RegexAst::EmptySet => f.write_str("#"),
            RegexAst::Epsilon => f.write_str("_"),
            RegexAst::Symbol(c) => write!(f, "{c}"),
            RegexAst::Union(l, r) => {
                if prec > 0 {
                    f.write_str("(")?;
                }
                l.write_prec(f, 0)?;
                f.write_str("+")?;
                r.write_prec(f, 1)?;
                if prec > 0 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            RegexAst::Concat(l, r) => {
                if prec > 1 {
                    f.write_str("(")?;
                }
                l.write_prec(f, 1)?;
                r.write_prec(f, 2)?;
                if prec > 1 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            RegexAst::Star(e) => {
                e.write_prec(f, 2)?;
                f.write_str("*")
            }
        }
    }
}

/// Prints with the fewest parentheses that still parse back to the same tree.
impl fmt::Display for RegexAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, 0)
    }
}

/// A regular expression together with the alphabet it was written over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regex {
    alphabet: Alphabet,
    ast: RegexAst,
}

impl Regex {
    pub fn new(ast: RegexAst, alphabet: Alphabet) -> Self {
        Regex { alphabet, ast }
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self, ModelError> {
        Ok(Regex::new(parse_regex(text, alphabet)?, alphabet.clone()))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn ast(&self) -> &RegexAst {
        &self.ast
    }
}

/// Parses a regular expression.
///
/// `+` (or `|`) is union and binds loosest, juxtaposition is concatenation,
/// postfix `*` binds tightest. `_` is ε and `#` is the empty language.
/// Whitespace is ignored. Error positions are character offsets.
pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<RegexAst, ModelError> {
    let tokens: Vec<(usize, char)> = text
        .chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.chars().count(),
        alphabet,
    };
    if parser.tokens.is_empty() {
        return Err(ModelError::syntax(0, "empty expression"));
    }
    let ast = parser.union()?;
    if let Some((at, c)) = parser.peek() {
        // union() only stops early at a ')' with nothing open
        debug_assert_eq!(c, ')');
        return Err(ModelError::syntax(at, "unmatched ')'"));
    }
    Ok(ast)
}

struct Parser<'a> {
    tokens: Vec<(usize, char)>,
    pos: usize,
    end: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<(usize, char)> {
        self.tokens.get(self.pos).copied()
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |(at, _)| at)
    }

    fn union(&mut self) -> Result<RegexAst, ModelError> {
        let mut left = self.concat()?;
        while let Some((at, c)) = self.peek() {
            if c != '+' && c != '|' {
                break;
            }
            self.pos += 1;
            match self.peek() {
                None => return Err(ModelError::syntax(at, format!("dangling '{c}' has no right operand"))),
                Some((_, ')' | '+' | '|')) => {
                    return Err(ModelError::syntax(at, format!("dangling '{c}' has no right operand")))
                }
                _ => {}
            }
            let right = self.concat()?;
            left = RegexAst::union(left, right);
        }
        Ok(left)
    }

    fn concat(&mut self) -> Result<RegexAst, ModelError> {
        let mut items = Vec::new();
        while let Some((_, c)) = self.peek() {
            if matches!(c, '+' | '|' | ')') {
                break;
            }
            items.push(self.postfix()?);
        }
        let mut iter = items.into_iter();
        let Some(first) = iter.next() else {
            let at = self.here();
            return Err(match self.peek() {
                Some((_, c @ ('+' | '|'))) => ModelError::syntax(at, format!("dangling '{c}' has no left operand")),
                Some((_, ')')) => ModelError::syntax(at, "expected an expression before ')'"),
                _ => ModelError::syntax(at, "expected an expression"),
            });
        };
        Ok(iter.fold(first, RegexAst::concat))
    }

    fn postfix(&mut self) -> Result<RegexAst, ModelError> {
        let mut e = self.atom()?;
        while let Some((_, '*')) = self.peek() {
            self.pos += 1;
            e = RegexAst::star(e);
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<RegexAst, ModelError> {
        let (at, c) = self.peek().expect("atom called at end of input");
        self.pos += 1;
        match c {
            '_' => Ok(RegexAst::Epsilon),
            '#' => Ok(RegexAst::EmptySet),
            '*' => Err(ModelError::syntax(at, "dangling '*' has no operand")),
            '(' => {
                if let Some((_, ')')) = self.peek() {
                    return Err(ModelError::syntax(at, "empty parentheses"));
                }
                let inner = self.union()?;
                match self.peek() {
                    Some((_, ')')) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(ModelError::syntax(at, "unclosed parenthesis")),
                }
            }
            c if self.alphabet.contains(c) => Ok(RegexAst::Symbol(c)),
            c => Err(ModelError::syntax(
                at,
                format!("symbol '{c}' is not in the alphabet {}", self.alphabet),
            )),
        }
    }
}
