// Canonical JSON for every model type. serde_json's default map is ordered,
// so object keys come out sorted.

use serde::Deserialize;
use serde_json::{json, Value};

use super::cfg::{Cfg, GrammarSymbol, Rule};
use super::fa::{fa_from_doc, FaDoc};
use super::pda::{pda_from_doc, PdaDoc};
use super::regex::{parse_regex, Regex};
use super::{Alphabet, Model};
use crate::error::ModelError;

pub(super) fn serialize_model(model: &Model) -> String {
    let value = match model {
        Model::Fa(fa) => {
            let name = |q: usize| fa.states()[q].clone();
            json!({
                "type": model.model_type().as_str(),
                "alphabet": fa.alphabet().to_strings(),
                "states": fa.states(),
                "start": name(fa.start()),
                "accepting": fa.accepting().iter().map(|&q| name(q)).collect::<Vec<_>>(),
                "transitions": fa.transitions().iter().map(|t| json!({
                    "from": name(t.from),
                    "read": t.read.map(|c| c.to_string()),
                    "to": name(t.to),
                })).collect::<Vec<_>>(),
            })
        }
        Model::Pda(p) => {
            let name = |q: usize| p.states()[q].clone();
            json!({
                "type": "pda",
                "alphabet": p.alphabet().to_strings(),
                "stackAlphabet": p.stack_alphabet().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "states": p.states(),
                "start": name(p.start()),
                "accepting": p.accepting().iter().map(|&q| name(q)).collect::<Vec<_>>(),
                "acceptanceMode": p.mode().as_str(),
                "transitions": p.transitions().iter().map(|t| json!({
                    "from": name(t.from),
                    "read": t.read.map(|c| c.to_string()),
                    "pop": t.pop.map(|c| c.to_string()),
                    "push": t.push.iter().collect::<String>(),
                    "to": name(t.to),
                })).collect::<Vec<_>>(),
            })
        }
        Model::Regex(r) => json!({
            "type": "regex",
            "alphabet": r.alphabet().to_strings(),
            "expression": r.ast().to_string(),
        }),
        Model::Cfg(g) => json!({
            "type": "cfg",
            "alphabet": g.alphabet().to_strings(),
            "nonterminals": g.nonterminals(),
            "start": g.nonterminals()[g.start()],
            "rules": g.rules().iter().map(|r| json!({
                "lhs": g.nonterminals()[r.lhs],
                "rhs": r.rhs.iter().map(|s| match *s {
                    GrammarSymbol::Terminal(c) => c.to_string(),
                    GrammarSymbol::Nonterminal(x) => g.nonterminals()[x].clone(),
                }).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        }),
    };
    value.to_string()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RegexDoc {
    #[serde(rename = "type")]
    _kind: String,
    alphabet: Vec<String>,
    expression: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CfgDoc {
    #[serde(rename = "type")]
    _kind: String,
    alphabet: Vec<String>,
    nonterminals: Vec<String>,
    start: String,
    rules: Vec<CfgRuleDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CfgRuleDoc {
    lhs: String,
    rhs: Vec<String>,
}

pub(super) fn parse_model(text: &str) -> Result<Model, ModelError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ModelError::schema(e.to_string()))?;
    let kind = value
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| ModelError::schema("missing \"type\" field"))?
        .to_string();
    match kind.as_str() {
        "dfa" | "nfa" => {
            let doc: FaDoc = from_value(value)?;
            Ok(Model::Fa(fa_from_doc(doc, kind == "dfa")?))
        }
        "pda" => {
            let doc: PdaDoc = from_value(value)?;
            Ok(Model::Pda(pda_from_doc(doc)?))
        }
        "regex" => {
            let doc: RegexDoc = from_value(value)?;
            let alphabet = Alphabet::from_strings(&doc.alphabet)?;
            let ast = parse_regex(&doc.expression, &alphabet)?;
            Ok(Model::Regex(Regex::new(ast, alphabet)))
        }
        "cfg" => {
            let doc: CfgDoc = from_value(value)?;
            Ok(Model::Cfg(cfg_from_doc(doc)?))
        }
        other => Err(ModelError::schema(format!("unsupported model type \"{other}\""))),
    }
}

fn from_value<T: serde::de::DeserializeOwned>(v: Value) -> Result<T, ModelError> {
    serde_json::from_value(v).map_err(|e| ModelError::schema(e.to_string()))
}

fn cfg_from_doc(doc: CfgDoc) -> Result<Cfg, ModelError> {
    let alphabet = Alphabet::from_strings(&doc.alphabet)?;
    let index = |name: &str| {
        doc.nonterminals
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| ModelError::validation(format!("nonterminal \"{name}\""), "not declared"))
    };
    let start = index(&doc.start)?;
    let mut rules = Vec::with_capacity(doc.rules.len());
    for r in &doc.rules {
        let lhs = index(&r.lhs)?;
        let mut rhs = Vec::with_capacity(r.rhs.len());
        for token in &r.rhs {
            if let Ok(x) = index(token) {
                rhs.push(GrammarSymbol::Nonterminal(x));
            } else {
                let c = super::single_char(token, "terminal")?;
                rhs.push(GrammarSymbol::Terminal(c));
            }
        }
        rules.push(Rule { lhs, rhs });
    }
    Cfg::new(alphabet, doc.nonterminals.clone(), rules, start)
}
