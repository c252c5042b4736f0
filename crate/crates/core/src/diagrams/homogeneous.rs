//! Brute-force homogeneity test: does the automorphism group act
//! transitively on every space?
//!
//! An automorphism is determined by a permutation of initial atoms that
//! preserves weights and maps each object's partition of the initial atoms
//! onto itself. Transitivity on the initial space implies transitivity on
//! every quotient, so only the initial orbit of atom 0 is computed.

use super::Diagram;
use crate::error::{Error, Result};

/// Largest initial space for the automorphism search.
pub const MAX_HOMOGENEITY_ATOMS: usize = 64;

struct Search<'a> {
    diagram: &'a Diagram,
    sigma: Vec<usize>,
    used: Vec<bool>,
    forward: Vec<Vec<usize>>,
    backward: Vec<Vec<usize>>,
}

const UNSET: usize = usize::MAX;

impl<'a> Search<'a> {
    fn new(diagram: &'a Diagram) -> Self {
        let n = diagram.initial_space().len();
        let forward = diagram.spaces().iter().map(|s| vec![UNSET; s.len()]).collect();
        let backward = diagram.spaces().iter().map(|s| vec![UNSET; s.len()]).collect();
        Search {
            diagram,
            sigma: vec![UNSET; n],
            used: vec![false; n],
            forward,
            backward,
        }
    }

    /// Tries `σ(a) = b`; on success returns the objects whose partial maps
    /// were extended, for undoing.
    fn assign(&mut self, a: usize, b: usize) -> Option<Vec<usize>> {
        let d = self.diagram;
        if self.used[b] || d.initial_space().weight(a) != d.initial_space().weight(b) {
            return None;
        }
        let mut extended = Vec::new();
        for obj in d.shape().objects() {
            let x = d.from_initial(obj)[a];
            let y = d.from_initial(obj)[b];
            let f = self.forward[obj][x];
            if f == y {
                continue;
            }
            let ok = f == UNSET
                && self.backward[obj][y] == UNSET
                && d.space(obj).weight(x) == d.space(obj).weight(y);
            if !ok {
                self.undo(a, b, &extended, false);
                return None;
            }
            self.forward[obj][x] = y;
            self.backward[obj][y] = x;
            extended.push(obj);
        }
        self.sigma[a] = b;
        self.used[b] = true;
        Some(extended)
    }

    fn undo(&mut self, a: usize, b: usize, extended: &[usize], assigned: bool) {
        let d = self.diagram;
        for &obj in extended {
            let x = d.from_initial(obj)[a];
            let y = d.from_initial(obj)[b];
            self.forward[obj][x] = UNSET;
            self.backward[obj][y] = UNSET;
        }
        if assigned {
            self.sigma[a] = UNSET;
            self.used[b] = false;
        }
    }

    fn extend(&mut self, a: usize) -> bool {
        let n = self.sigma.len();
        if a == n {
            return true;
        }
        for b in 0..n {
            if let Some(extended) = self.assign(a, b) {
                if self.extend(a + 1) {
                    return true;
                }
                self.undo(a, b, &extended, true);
            }
        }
        false
    }
}

fn automorphism_sending(diagram: &Diagram, target: usize) -> Option<Vec<usize>> {
    let mut search = Search::new(diagram);
    search.assign(0, target)?;
    if search.extend(1) {
        Some(search.sigma)
    } else {
        None
    }
}

impl Diagram {
    pub fn is_homogeneous(&self) -> Result<bool> {
        let n = self.initial_space().len();
        if n > MAX_HOMOGENEITY_ATOMS {
            return Err(Error::SizeLimit {
                what: "initial atoms for homogeneity search",
                got: n as u128,
                limit: MAX_HOMOGENEITY_ATOMS as u128,
            });
        }
        let mut generators: Vec<Vec<usize>> = Vec::new();
        let mut in_orbit = vec![false; n];
        in_orbit[0] = true;
        let mut frontier = vec![0];
        loop {
            while let Some(a) = frontier.pop() {
                for g in &generators {
                    if !in_orbit[g[a]] {
                        in_orbit[g[a]] = true;
                        frontier.push(g[a]);
                    }
                }
            }
            let Some(target) = (0..n).find(|&b| !in_orbit[b]) else {
                return Ok(true);
            };
            match automorphism_sending(self, target) {
                Some(sigma) => {
                    generators.push(sigma);
                    frontier = (0..n).filter(|&b| in_orbit[b]).collect();
                }
                None => return Ok(false),
            }
        }
    }
}
