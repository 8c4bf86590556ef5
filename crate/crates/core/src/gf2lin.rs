//! Affine linear systems over GF(2), used wherever an equation is additive in
//! the coefficient bits of its unknowns (squaring is additive in characteristic 2).

/// A dense bit vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        if v {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_with(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }
}

/// Solution set `particular + span(kernel)` of `A v = b`.
#[derive(Clone, Debug)]
pub struct AffineSolution {
    pub particular: BitVec,
    pub kernel: Vec<BitVec>,
}

impl AffineSolution {
    /// Enumerates all solutions when the kernel has at most `max_dim` vectors.
    pub fn enumerate(&self, max_dim: usize) -> Option<Vec<BitVec>> {
        if self.kernel.len() > max_dim {
            return None;
        }
        let mut out = Vec::with_capacity(1 << self.kernel.len());
        for mask in 0u64..1 << self.kernel.len() {
            let mut v = self.particular.clone();
            for (i, k) in self.kernel.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    v.xor_with(k);
                }
            }
            out.push(v);
        }
        Some(out)
    }
}

/// Solves `A v = b` where `columns[j]` is the image of the j-th unit vector.
///
/// Pivots are chosen left to right, so free variables are the later columns
/// and the particular solution sets them to zero.
pub fn solve_columns(columns: &[BitVec], rhs: &BitVec) -> Option<AffineSolution> {
    let nvars = columns.len();
    let nrows = rhs.len();
    // rows: [coefficients | rhs]
    let mut rows: Vec<BitVec> = (0..nrows)
        .map(|r| {
            let mut row = BitVec::zeros(nvars + 1);
            for (j, col) in columns.iter().enumerate() {
                if col.get(r) {
                    row.set(j, true);
                }
            }
            row.set(nvars, rhs.get(r));
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..nvars {
        let Some(p) = (rank..nrows).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.get(col) {
                row.xor_with(&pivot);
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    if rows[rank..].iter().any(|row| row.get(nvars)) {
        return None;
    }

    let mut particular = BitVec::zeros(nvars);
    for (i, &pc) in pivots.iter().enumerate() {
        particular.set(pc, rows[i].get(nvars));
    }
    let mut is_pivot = vec![false; nvars];
    for &pc in &pivots {
        is_pivot[pc] = true;
    }
    let kernel = (0..nvars)
        .filter(|&j| !is_pivot[j])
        .map(|free| {
            let mut v = BitVec::zeros(nvars);
            v.set(free, true);
            for (i, &pc) in pivots.iter().enumerate() {
                if rows[i].get(free) {
                    v.set(pc, true);
                }
            }
            v
        })
        .collect();
    Some(AffineSolution { particular, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(bits: &[u8]) -> BitVec {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b == 1);
        }
        v
    }

    fn apply(columns: &[BitVec], v: &BitVec, nrows: usize) -> BitVec {
        let mut out = BitVec::zeros(nrows);
        for j in v.ones() {
            out.xor_with(&columns[j]);
        }
        out
    }

    #[test]
    fn exhaustive_small_systems() {
        // every 3x3 system over GF(2): solution set matches brute force
        for a in 0u32..512 {
            let cols: Vec<BitVec> = (0..3)
                .map(|j| bv(&[(a >> (3 * j) & 1) as u8, (a >> (3 * j + 1) & 1) as u8, (a >> (3 * j + 2) & 1) as u8]))
                .collect();
            for b in 0u8..8 {
                let rhs = bv(&[b & 1, b >> 1 & 1, b >> 2 & 1]);
                let brute: Vec<BitVec> = (0u8..8)
                    .map(|m| bv(&[m & 1, m >> 1 & 1, m >> 2 & 1]))
                    .filter(|v| apply(&cols, v, 3) == rhs)
                    .collect();
                match solve_columns(&cols, &rhs) {
                    None => assert!(brute.is_empty()),
                    Some(sol) => {
                        let mut all = sol.enumerate(8).unwrap();
                        all.sort_by_key(|v| v.words.clone());
                        let mut brute = brute.clone();
                        brute.sort_by_key(|v| v.words.clone());
                        assert_eq!(all, brute);
                    }
                }
            }
        }
    }
}
