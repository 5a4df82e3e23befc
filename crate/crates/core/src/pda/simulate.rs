use std::collections::{HashSet, VecDeque};

use crate::error::EngineError;
use super::normal::{NormalPda, StackOp};
use crate::model::{AcceptanceMode, Pda, BOTTOM_MARKER};

/// Default configuration budget for [`simulate_member`].
pub const DEFAULT_MAX_CONFIGS: usize = 1_000_000;

/// Stack height allowed while simulating `w`: the input length plus room
/// for the bottom marker and a few ε-pushes.
pub fn default_stack_limit(pda: &Pda, w: &str) -> usize {
    w.chars().count() + pda.stack_alphabet().len() + 4
}

/// Membership by breadth-first search over configurations of the machine
/// as written. Configurations whose stack grows past `stack_limit` are
/// dropped; visiting more than `max_configs` distinct configurations fails
/// with `SearchCapExceeded`.
pub fn simulate_member(pda: &Pda, w: &str, stack_limit: usize, max_configs: usize) -> Result<bool, EngineError> {
    let word: Vec<char> = w.chars().collect();
    // (state, input position, stack with top last)
    type Config = (usize, usize, Vec<char>);
    let initial: Config = (pda.start(), 0, vec![BOTTOM_MARKER]);
    let mut seen: HashSet<Config> = HashSet::from([initial.clone()]);
    let mut queue = VecDeque::from([initial]);
    while let Some((q, pos, stack)) = queue.pop_front() {
        if pos == word.len() {
            let accepted = match pda.mode() {
                AcceptanceMode::FinalState => pda.accepting().contains(&q),
                AcceptanceMode::EmptyStack => stack.is_empty(),
            };
            if accepted {
                return Ok(true);
            }
        }
        for t in pda.transitions().iter().filter(|t| t.from == q) {
            let next_pos = match t.read {
                None => pos,
                Some(c) if word.get(pos) == Some(&c) => pos + 1,
                Some(_) => continue,
            };
            let mut next_stack = stack.clone();
            if let Some(x) = t.pop {
                if next_stack.pop() != Some(x) {
                    continue;
                }
            }
            next_stack.extend(t.push.iter().rev());
            if next_stack.len() > stack_limit {
                continue;
            }
            let config = (t.to, next_pos, next_stack);
            if !seen.contains(&config) {
                if seen.len() >= max_configs {
                    return Err(EngineError::SearchCapExceeded { cap: max_configs });
                }
                seen.insert(config.clone());
                queue.push_back(config);
            }
        }
    }
    Ok(false)
}

/// [`simulate_member`] for a normalized machine. Its stack carries the
/// floor marker, so allow one more symbol than for the source machine.
pub fn simulate_normal(m: &NormalPda, w: &str, stack_limit: usize, max_configs: usize) -> Result<bool, EngineError> {
    let word: Vec<char> = w.chars().collect();
    type Config = (usize, usize, Vec<char>);
    let initial: Config = (m.start(), 0, Vec::new());
    let mut seen: HashSet<Config> = HashSet::from([initial.clone()]);
    let mut queue = VecDeque::from([initial]);
    while let Some((q, pos, stack)) = queue.pop_front() {
        if q == m.accept() && pos == word.len() {
            return Ok(true);
        }
        for t in m.moves().iter().filter(|t| t.from == q) {
            let next_pos = match t.read {
                None => pos,
                Some(c) if word.get(pos) == Some(&c) => pos + 1,
                Some(_) => continue,
            };
            let mut next_stack = stack.clone();
            match t.op {
                StackOp::Push(x) => next_stack.push(x),
                StackOp::Pop(x) => {
                    if next_stack.pop() != Some(x) {
                        continue;
                    }
                }
            }
            if next_stack.len() > stack_limit {
                continue;
            }
            let config = (t.to, next_pos, next_stack);
            if !seen.contains(&config) {
                if seen.len() >= max_configs {
                    return Err(EngineError::SearchCapExceeded { cap: max_configs });
                }
                seen.insert(config.clone());
                queue.push_back(config);
            }
        }
    }
    Ok(false)
}
