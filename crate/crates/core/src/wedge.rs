//! Indexing of wedge-power bases: strictly increasing p-tuples from
//! {0, ..., n-1} in lexicographic order, with constant-time rank lookup.

use std::collections::HashMap;

#[derive(Debug, Clone)]
pub struct WedgeBasis {
    n: usize,
    p: usize,
    tuples: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl WedgeBasis {
    pub fn new(n: usize, p: usize) -> Self {
        let mut tuples = Vec::new();
        if p <= n {
            let mut current: Vec<u32> = (0..p as u32).collect();
            loop {
                tuples.push(current.clone());
                if !next_combination(&mut current, n) {
                    break;
                }
            }
        }
        let index = tuples
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        WedgeBasis {
            n,
            p,
            tuples,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.tuples.len()
    }

    pub fn order(&self) -> usize {
        self.p
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn tuple(&self, i: usize) -> &[u32] {
        &self.tuples[i]
    }

    pub fn tuples(&self) -> impl Iterator<Item = &[u32]> {
        self.tuples.iter().map(|t| t.as_slice())
    }

    pub fn rank_of(&self, tuple: &[u32]) -> usize {
        self.index[tuple]
    }
}

/// Advances to the next strictly increasing p-tuple in {0..n-1};
/// false when exhausted.
fn next_combination(current: &mut [u32], n: usize) -> bool {
    let p = current.len();
    for i in (0..p).rev() {
        if current[i] < (n - p + i) as u32 {
            current[i] += 1;
            for j in i + 1..p {
                current[j] = current[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
