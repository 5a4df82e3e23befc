use crate::model::{AcceptanceMode, Alphabet, Pda, BOTTOM_MARKER};

/// Marks the bottom of the stack in a [`NormalPda`]. Never valid in a
/// submitted stack alphabet.
pub const FLOOR: char = '$';

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StackOp {
    Push(char),
    Pop(char),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NormalMove {
    pub from: usize,
    pub read: Option<char>,
    pub op: StackOp,
    pub to: usize,
}

/// A PDA in the shape the grammar construction needs: every move pushes
/// exactly one symbol or pops exactly one, the stack starts empty, and there
/// is a single accepting state that is entered only with an empty stack.
/// Accepts the same language as the machine it came from.
#[derive(Debug, Clone)]
pub struct NormalPda {
    names: Vec<String>,
    alphabet: Alphabet,
    moves: Vec<NormalMove>,
    start: usize,
    accept: usize,
}

impl NormalPda {
    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn moves(&self) -> &[NormalMove] {
        &self.moves
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn accept(&self) -> usize {
        self.accept
    }
}

struct Builder {
    names: Vec<String>,
    moves: Vec<NormalMove>,
}

impl Builder {
    fn fresh(&mut self, hint: &str) -> usize {
        self.names.push(format!("{hint}#{}", self.names.len()));
        self.names.len() - 1
    }

    fn add(&mut self, from: usize, read: Option<char>, op: StackOp, to: usize) {
        self.moves.push(NormalMove { from, read, op, to });
    }

    // one move per op, chained through fresh states; `read` goes on the first
    fn chain(&mut self, from: usize, read: Option<char>, ops: &[StackOp], to: usize) {
        let mut at = from;
        let mut read = read;
        for (i, &op) in ops.iter().enumerate() {
            let next = if i + 1 == ops.len() { to } else { self.fresh("via") };
            self.add(at, read.take(), op, next);
            at = next;
        }
    }
}

/// Normalizes a PDA. `BOTTOM_MARKER` is placed on the stack over the floor
/// before the original start state runs; transitions with a pop and a
/// multi-symbol push become chains of single-symbol moves; moves that
/// neither push nor pop push and pop the floor. Final-state machines may
/// drain the stack from any accepting state.
pub fn normalize_pda(pda: &Pda) -> NormalPda {
    let mut b = Builder {
        names: pda.states().to_vec(),
        moves: Vec::new(),
    };
    let start = b.fresh("init");
    let accept = b.fresh("accept");
    b.chain(
        start,
        None,
        &[StackOp::Push(FLOOR), StackOp::Push(BOTTOM_MARKER)],
        pda.start(),
    );

    for t in pda.transitions() {
        let mut ops = Vec::with_capacity(t.push.len() + 1);
        if let Some(x) = t.pop {
            ops.push(StackOp::Pop(x));
        }
        // the first pushed character ends on top, so it goes last
        ops.extend(t.push.iter().rev().map(|&x| StackOp::Push(x)));
        if ops.is_empty() {
            ops = vec![StackOp::Push(FLOOR), StackOp::Pop(FLOOR)];
        }
        b.chain(t.from, t.read, &ops, t.to);
    }

    match pda.mode() {
        AcceptanceMode::FinalState => {
            let drain = b.fresh("drain");
            for &q in pda.accepting() {
                for &x in pda.stack_alphabet() {
                    b.add(q, None, StackOp::Pop(x), drain);
                }
                b.add(q, None, StackOp::Pop(FLOOR), accept);
            }
            for &x in pda.stack_alphabet() {
                b.add(drain, None, StackOp::Pop(x), drain);
            }
            b.add(drain, None, StackOp::Pop(FLOOR), accept);
        }
        AcceptanceMode::EmptyStack => {
            for q in 0..pda.num_states() {
                b.add(q, None, StackOp::Pop(FLOOR), accept);
            }
        }
    }

    NormalPda {
        names: b.names,
        alphabet: pda.alphabet().clone(),
        moves: b.moves,
        start,
        accept,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homework;
    use crate::model::Model;

    #[test]
    fn every_move_is_a_single_push_or_pop() {
        let Model::Pda(p) = homework::q5_pda() else { unreachable!() };
        let n = normalize_pda(&p);
        assert!(n.moves().iter().all(|m| m.from < n.num_states() && m.to < n.num_states()));
        // the accepting state is only entered by popping the floor
        for m in n.moves().iter().filter(|m| m.to == n.accept()) {
            assert_eq!(m.op, StackOp::Pop(FLOOR));
        }
        assert!(n.moves().iter().all(|m| m.from != n.accept()));
    }

    #[test]
    fn push_order_is_reversed() {
        let Model::Pda(p) = homework::q5_pda() else { unreachable!() };
        let n = normalize_pda(&p);
        // count --a, pop Z--> via --push Z--> via --push A--> count
        let first = n
            .moves()
            .iter()
            .find(|m| m.from == 0 && m.read == Some('a') && m.op == StackOp::Pop('Z'))
            .unwrap();
        let second = n.moves().iter().find(|m| m.from == first.to).unwrap();
        assert_eq!(second.op, StackOp::Push('Z'));
        let third = n.moves().iter().find(|m| m.from == second.to).unwrap();
        assert_eq!(third.op, StackOp::Push('A'));
        assert_eq!(third.to, 0);
    }
}
