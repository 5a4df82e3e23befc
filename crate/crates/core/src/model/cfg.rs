use std::fmt;

use super::Alphabet;
use crate::error::ModelError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GrammarSymbol {
    Terminal(char),
    /// Index into [`Cfg::nonterminals`].
    Nonterminal(usize),
}

/// `lhs -> rhs`; an empty `rhs` is an ε-rule.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub lhs: usize,
    pub rhs: Vec<GrammarSymbol>,
}

/// A context-free grammar. Hand-written grammars use single uppercase
/// letters as nonterminal names; generated ones may use longer names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cfg {
    alphabet: Alphabet,
    nonterminals: Vec<String>,
    rules: Vec<Rule>,
    start: usize,
}

impl Cfg {
    pub fn new(
        alphabet: Alphabet,
        nonterminals: Vec<String>,
        rules: Vec<Rule>,
        start: usize,
    ) -> Result<Self, ModelError> {
        if rules.is_empty() {
            return Err(ModelError::validation("rules", "grammar has no rules"));
        }
        for (i, name) in nonterminals.iter().enumerate() {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(ModelError::validation(format!("nonterminal \"{name}\""), "invalid name"));
            }
            if nonterminals[..i].contains(name) {
                return Err(ModelError::validation(format!("nonterminal \"{name}\""), "declared twice"));
            }
            let mut chars = name.chars();
            if let (Some(c), None) = (chars.next(), chars.next()) {
                if alphabet.contains(c) {
                    return Err(ModelError::validation(
                        format!("nonterminal \"{name}\""),
                        "also declared as a terminal",
                    ));
                }
            }
        }
        let n = nonterminals.len();
        if start >= n {
            return Err(ModelError::validation("start", "start symbol is not a declared nonterminal"));
        }
        for rule in &rules {
            if rule.lhs >= n {
                return Err(ModelError::validation("rule", "left-hand side is not declared"));
            }
            for sym in &rule.rhs {
                match *sym {
                    GrammarSymbol::Nonterminal(x) if x >= n => {
                        return Err(ModelError::validation("rule", "undeclared nonterminal on right-hand side"))
                    }
                    GrammarSymbol::Terminal(c) if !alphabet.contains(c) => {
                        return Err(ModelError::validation(
                            format!("symbol '{c}'"),
                            format!("not in the alphabet {alphabet}"),
                        ))
                    }
                    _ => {}
                }
            }
        }
        Ok(Cfg {
            alphabet,
            nonterminals,
            rules,
            start,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn nonterminal_index(&self, name: &str) -> Option<usize> {
        self.nonterminals.iter().position(|n| n == name)
    }

    /// Renders a right-hand side the way the text format writes it.
    pub fn rhs_to_string(&self, rhs: &[GrammarSymbol]) -> String {
        if rhs.is_empty() {
            return "_".to_string();
        }
        rhs.iter()
            .map(|s| match *s {
                GrammarSymbol::Terminal(c) => c.to_string(),
                GrammarSymbol::Nonterminal(x) => self.nonterminals[x].clone(),
            })
            .collect()
    }
}

/// One line per run of consecutive rules sharing a left-hand side, so the
/// text parses back with the same rule order.
impl fmt::Display for Cfg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        while i < self.rules.len() {
            let lhs = self.rules[i].lhs;
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{} -> ", self.nonterminals[lhs])?;
            let mut first = true;
            while i < self.rules.len() && self.rules[i].lhs == lhs {
                if !first {
                    write!(f, " | ")?;
                }
                write!(f, "{}", self.rhs_to_string(&self.rules[i].rhs))?;
                first = false;
                i += 1;
            }
        }
        Ok(())
    }
}

struct RawAlternative {
    lhs: char,
    /// (character offset, symbol); empty for ε
    symbols: Vec<(usize, char)>,
}

/// Parses grammar text: one `X -> alt | alt ...` per line (`;` also ends a
/// line, `→` is accepted for `->`). `_` is the empty right-hand side and the
/// first left-hand side is the start symbol.
pub fn parse_cfg(text: &str, alphabet: &Alphabet) -> Result<Cfg, ModelError> {
    let chars: Vec<char> = text.chars().collect();
    let mut raw: Vec<RawAlternative> = Vec::new();
    let mut line_start = 0;
    for i in 0..=chars.len() {
        if i == chars.len() || chars[i] == '\n' || chars[i] == ';' {
            parse_line(&chars[line_start..i], line_start, &mut raw)?;
            line_start = i + 1;
        }
    }
    if raw.is_empty() {
        return Err(ModelError::syntax(0, "grammar has no rules"));
    }

    let mut names: Vec<char> = Vec::new();
    for alt in &raw {
        if !names.contains(&alt.lhs) {
            names.push(alt.lhs);
        }
    }
    if let Some(&c) = names.iter().find(|c| alphabet.contains(**c)) {
        return Err(ModelError::validation(
            format!("nonterminal '{c}'"),
            "also declared as a terminal",
        ));
    }

    let mut rules = Vec::with_capacity(raw.len());
    for alt in raw {
        let mut rhs = Vec::with_capacity(alt.symbols.len());
        for (_, c) in alt.symbols {
            if let Some(x) = names.iter().position(|&n| n == c) {
                rhs.push(GrammarSymbol::Nonterminal(x));
            } else if alphabet.contains(c) {
                rhs.push(GrammarSymbol::Terminal(c));
            } else {
                return Err(ModelError::validation(
                    format!("symbol '{c}'"),
                    format!("neither a nonterminal with rules nor a terminal in {alphabet}"),
                ));
            }
        }
        let lhs = names.iter().position(|&n| n == alt.lhs).expect("collected above");
        rules.push(Rule { lhs, rhs });
    }
    Cfg::new(alphabet.clone(), names.iter().map(|c| c.to_string()).collect(), rules, 0)
}

fn parse_line(line: &[char], offset: usize, out: &mut Vec<RawAlternative>) -> Result<(), ModelError> {
    if line.iter().all(|c| c.is_whitespace()) {
        return Ok(());
    }
    let arrow = (0..line.len()).find_map(|i| {
        if line[i] == '→' {
            Some((i, 1))
        } else if line[i] == '-' && line.get(i + 1) == Some(&'>') {
            Some((i, 2))
        } else {
            None
        }
    });
    let first = offset + line.iter().position(|c| !c.is_whitespace()).unwrap_or(0);
    let Some((arrow_at, arrow_len)) = arrow else {
        return Err(ModelError::syntax(first, "expected '->' after the left-hand side"));
    };
    let lhs: Vec<char> = line[..arrow_at].iter().copied().filter(|c| !c.is_whitespace()).collect();
    let lhs = match lhs.as_slice() {
        [c] if c.is_ascii_uppercase() => *c,
        [] => return Err(ModelError::syntax(first, "missing left-hand side")),
        _ => {
            return Err(ModelError::syntax(
                first,
                "left-hand side must be a single uppercase letter",
            ))
        }
    };
    let body_start = arrow_at + arrow_len;
    let mut alt_start = body_start;
    for i in body_start..=line.len() {
        if i < line.len() && line[i] != '|' {
            continue;
        }
        let symbols: Vec<(usize, char)> = (alt_start..i)
            .filter(|&j| !line[j].is_whitespace())
            .map(|j| (offset + j, line[j]))
            .collect();
        let alt_pos = offset + alt_start.min(line.len());
        match symbols.as_slice() {
            [] => {
                return Err(ModelError::syntax(
                    alt_pos,
                    "empty alternative (write _ for the empty string)",
                ))
            }
            [(_, '_')] => out.push(RawAlternative { lhs, symbols: Vec::new() }),
            _ => {
                if let Some(&(at, c)) = symbols
                    .iter()
                    .find(|(_, c)| matches!(c, '_' | '#' | '+' | '*' | '(' | ')' | '-' | '>' | '→'))
                {
                    let msg = if c == '_' {
                        "'_' must stand alone as an alternative".to_string()
                    } else {
                        format!("unexpected '{c}'")
                    };
                    return Err(ModelError::syntax(at, msg));
                }
                out.push(RawAlternative { lhs, symbols });
            }
        }
        alt_start = i + 1;
    }
    Ok(())
}
