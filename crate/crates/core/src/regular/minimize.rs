//! Hopcroft partition refinement.

use super::Dfa;

impl Dfa {
    /// Minimal complete DFA for the same language. Unreachable states are
    /// dropped first; the result's states are numbered in breadth-first order
    /// from the start, so equal languages give identical tables.
    pub fn minimize(&self) -> Dfa {
        let reachable = self.reachable_order();
        let dfa = self.renumbered(&reachable);
        let n = dfa.num_states();
        let k = dfa.alphabet().len();

        // inverse[(q * k) + c] = predecessors of q on c
        let mut inverse: Vec<Vec<usize>> = vec![Vec::new(); n * k];
        for p in 0..n {
            for c in 0..k {
                inverse[dfa.next(p, c) * k + c].push(p);
            }
        }

        let (acc, rej): (Vec<usize>, Vec<usize>) = (0..n).partition(|&q| dfa.is_accepting(q));
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = vec![0usize; n];
        for part in [acc, rej] {
            if !part.is_empty() {
                for &q in &part {
                    block_of[q] = blocks.len();
                }
                blocks.push(part);
            }
        }

        let mut in_work: Vec<Vec<bool>> = vec![vec![false; k]; blocks.len()];
        let mut work: Vec<(usize, usize)> = Vec::new();
        if blocks.len() == 2 {
            let smaller = if blocks[0].len() <= blocks[1].len() { 0 } else { 1 };
            for c in 0..k {
                work.push((smaller, c));
                in_work[smaller][c] = true;
            }
        }

        let mut marked = vec![false; n];
        while let Some((splitter, c)) = work.pop() {
            in_work[splitter][c] = false;
            let mut touched: Vec<usize> = Vec::new();
            let mut hits: Vec<usize> = Vec::new();
            for &q in &blocks[splitter] {
                for &p in &inverse[q * k + c] {
                    if !marked[p] {
                        marked[p] = true;
                        hits.push(p);
                        touched.push(block_of[p]);
                    }
                }
            }
            touched.sort_unstable();
            touched.dedup();
            for y in touched {
                let (inside, outside): (Vec<usize>, Vec<usize>) =
                    blocks[y].iter().partition(|&&q| marked[q]);
                if outside.is_empty() {
                    continue;
                }
                let new_id = blocks.len();
                let (keep, moved) = if inside.len() <= outside.len() {
                    (outside, inside)
                } else {
                    (inside, outside)
                };
                for &q in &moved {
                    block_of[q] = new_id;
                }
                blocks[y] = keep;
                blocks.push(moved);
                in_work.push(vec![false; k]);
                for d in 0..k {
                    // `moved` is the smaller half; enough on its own unless
                    // the whole of y was still pending.
                    if !in_work[new_id][d] {
                        in_work[new_id][d] = true;
                        work.push((new_id, d));
                    }
                }
            }
            for p in hits {
                marked[p] = false;
            }
        }

        let m = blocks.len();
        let mut delta = Vec::with_capacity(m * k);
        let mut accepting = Vec::with_capacity(m);
        for block in &blocks {
            let rep = block[0];
            delta.extend((0..k).map(|c| block_of[dfa.next(rep, c)]));
            accepting.push(dfa.is_accepting(rep));
        }
        let quotient = Dfa::new(dfa.alphabet().clone(), delta, accepting, block_of[dfa.start()]);
        let order = quotient.reachable_order();
        quotient.renumbered(&order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Alphabet;

    #[test]
    fn mod_four_collapses_to_parity() {
        let a = Alphabet::new(['a']).unwrap();
        let dfa = Dfa::new(a, vec![1, 2, 3, 0], vec![true, false, true, false], 0);
        let min = dfa.minimize();
        assert_eq!(min.num_states(), 2);
        for len in 0..10 {
            let w = "a".repeat(len);
            assert_eq!(min.accepts(&w), len % 2 == 0);
        }
    }

    #[test]
    fn minimal_input_keeps_size() {
        let ab = Alphabet::new("ab".chars()).unwrap();
        // ends in b
        let dfa = Dfa::new(ab, vec![0, 1, 0, 1], vec![false, true], 0);
        assert_eq!(dfa.minimize().num_states(), 2);
    }

    #[test]
    fn drops_unreachable_and_handles_single_class() {
        let ab = Alphabet::new("ab".chars()).unwrap();
        let dfa = Dfa::new(ab.clone(), vec![0, 0, 1, 1], vec![true, false], 0);
        let min = dfa.minimize();
        assert_eq!(min.num_states(), 1);
        assert!(min.accepts("abba"));
        let none = Dfa::new(ab, vec![1, 1, 1, 1], vec![false, false], 0);
        assert_eq!(none.minimize().num_states(), 1);
    }
}
