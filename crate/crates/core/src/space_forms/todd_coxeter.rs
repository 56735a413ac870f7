//! Coset enumeration over the trivial subgroup.
//!
//! Letters are columns: generator `g` is column `2g`, its inverse `2g + 1`.

use std::collections::VecDeque;

/// A finitely presented group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    /// Relators as words of signed generator numbers, `+k` for generator
    /// `k - 1` and `-k` for its inverse.
    pub relators: Vec<Vec<i32>>,
}

impl Presentation {
    fn columns(&self, word: &[i32]) -> Vec<usize> {
        word.iter()
            .map(|&l| {
                let g = l.unsigned_abs() as usize - 1;
                2 * g + usize::from(l < 0)
            })
            .collect()
    }
}

/// Right action of the generators on the enumerated cosets, standardized
/// so that coset 0 is the identity and the rest appear in breadth-first
/// order over the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    /// `action[c][g]` is coset `c` times generator `g`.
    pub action: Vec<Vec<usize>>,
}

struct Enumerator {
    cols: usize,
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    limit: usize,
}

impl Enumerator {
    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut k = c;
        while self.parent[k] != r {
            let next = self.parent[k];
            self.parent[k] = r;
            k = next;
        }
        r
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Option<()> {
        if self.table.len() >= self.limit {
            return None;
        }
        let d = self.table.len();
        self.table.push(vec![None; self.cols]);
        self.parent.push(d);
        self.table[c][x] = Some(d);
        self.table[d][x ^ 1] = Some(c);
        Some(())
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut VecDeque<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = (a.min(b), a.max(b));
        self.parent[drop] = keep;
        queue.push_back(drop);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::new();
        self.merge(a, b, &mut queue);
        while let Some(e) = queue.pop_front() {
            for x in 0..self.cols {
                let Some(f) = self.table[e][x] else { continue };
                if self.table[f][x ^ 1] == Some(e) {
                    self.table[f][x ^ 1] = None;
                }
                let (e1, f1) = (self.rep(e), self.rep(f));
                if let Some(g) = self.table[e1][x] {
                    self.merge(f1, g, &mut queue);
                } else if let Some(g) = self.table[f1][x ^ 1] {
                    self.merge(e1, g, &mut queue);
                } else {
                    self.table[e1][x] = Some(f1);
                    self.table[f1][x ^ 1] = Some(e1);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Option<()> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j {
                match self.table[f][w[i]] {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i as isize > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Some(());
            }
            while j >= i as isize {
                match self.table[b][w[j as usize] ^ 1] {
                    Some(n) => {
                        b = n;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Some(());
            }
            if j == i as isize {
                self.table[f][w[i]] = Some(b);
                self.table[b][w[i] ^ 1] = Some(f);
                return Some(());
            }
            self.define(f, w[i])?;
        }
    }
}

/// Enumerates the elements of the group, or gives up once more than
/// `limit` cosets have been defined.
pub fn enumerate(p: &Presentation, limit: usize) -> Option<CosetTable> {
    let cols = 2 * p.generators;
    let relators: Vec<Vec<usize>> = p.relators.iter().map(|r| p.columns(r)).collect();
    let mut en = Enumerator {
        cols,
        table: vec![vec![None; cols]],
        parent: vec![0],
        limit,
    };
    let mut c = 0;
    while c < en.table.len() {
        for r in &relators {
            if !en.live(c) {
                break;
            }
            en.scan_and_fill(c, r)?;
        }
        for x in 0..cols {
            if en.live(c) && en.table[c][x].is_none() {
                en.define(c, x)?;
            }
        }
        c += 1;
    }
    // Renumber the live cosets breadth-first from the identity.
    let mut order = vec![usize::MAX; en.table.len()];
    let mut seq = vec![0usize];
    order[0] = 0;
    let mut k = 0;
    while k < seq.len() {
        let c = seq[k];
        for g in 0..p.generators {
            let d = en.rep(en.table[c][2 * g].expect("complete table"));
            if order[d] == usize::MAX {
                order[d] = seq.len();
                seq.push(d);
            }
        }
        k += 1;
    }
    let mut action = Vec::with_capacity(seq.len());
    for &c in &seq {
        let row = (0..p.generators)
            .map(|g| {
                let d = en.table[c][2 * g].expect("complete table");
                order[en.rep(d)]
            })
            .collect();
        action.push(row);
    }
    Some(CosetTable { action })
}
