use super::CnfGrammar;

/// CYK table that grows and shrinks one symbol at a time, so a depth-first
/// walk over all strings shares work between strings with a common prefix.
/// Appending the n-th symbol fills one column of n cells.
pub(crate) struct Chart<'g> {
    g: &'g CnfGrammar,
    words: usize,
    // columns[j] holds the cells for spans [i, j + 1), i = 0..=j, each `words` long
    columns: Vec<Vec<u64>>,
    len: usize,
}

impl<'g> Chart<'g> {
    pub(crate) fn new(g: &'g CnfGrammar) -> Self {
        Chart {
            g,
            words: g.num_nonterminals().div_ceil(64).max(1),
            columns: Vec::new(),
            len: 0,
        }
    }

    fn cell(&self, i: usize, j: usize) -> &[u64] {
        let w = self.words;
        &self.columns[j - 1][i * w..(i + 1) * w]
    }

    /// Appends the symbol with index `symbol` in the grammar's alphabet.
    pub(crate) fn push(&mut self, symbol: usize) {
        let n = self.len;
        let w = self.words;
        let mut column = if self.columns.len() > n {
            std::mem::take(&mut self.columns[n])
        } else {
            Vec::new()
        };
        column.clear();
        column.resize((n + 1) * w, 0);
        for &a in &self.g.by_symbol[symbol] {
            column[n * w + a / 64] |= 1 << (a % 64);
        }
        for i in (0..n).rev() {
            let (head, tail) = column.split_at_mut((i + 1) * w);
            let target = &mut head[i * w..];
            for k in i + 1..=n {
                let left = self.cell(i, k);
                let right = &tail[(k - i - 1) * w..(k - i) * w];
                if right.iter().all(|&x| x == 0) {
                    continue;
                }
                for (wi, &bits) in left.iter().enumerate() {
                    let mut bits = bits;
                    while bits != 0 {
                        let b = wi * 64 + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        for &(c, a) in &self.g.by_left[b] {
                            if right[c / 64] & (1 << (c % 64)) != 0 {
                                target[a / 64] |= 1 << (a % 64);
                            }
                        }
                    }
                }
            }
        }
        if self.columns.len() > n {
            self.columns[n] = column;
        } else {
            self.columns.push(column);
        }
        self.len += 1;
    }

    pub(crate) fn pop(&mut self) {
        self.len -= 1;
    }

    /// Whether the grammar derives the current string.
    pub(crate) fn accepts(&self) -> bool {
        if self.len == 0 {
            return self.g.accepts_epsilon();
        }
        let s = self.g.start();
        self.cell(0, self.len)[s / 64] & (1 << (s % 64)) != 0
    }
}

/// CYK membership test. Strings with symbols outside the alphabet are
/// rejected.
pub fn cyk_member(g: &CnfGrammar, w: &str) -> bool {
    let mut chart = Chart::new(g);
    for c in w.chars() {
        match g.alphabet().index_of(c) {
            Some(i) => chart.push(i),
            None => return false,
        }
    }
    chart.accepts()
}
