//! Seeded random string algebras for property tests.
//!
//! Sampling: a quiver with per-vertex in/out degree at most 2, a sprinkle
//! of length-2 and length-3 zero relations, then greedy length-2 additions
//! until the unique-continuation and unique-predecessor conditions hold.
//! Inadmissible or oversized outcomes are rejected and resampled, so every
//! seed deterministically yields a valid algebra.

use crate::algebra::StringAlgebra;
use crate::quiver::{BoundQuiver, Quiver};

/// Splitmix64: tiny, seedable, and stable across releases, which golden
/// tests care about more than statistical quality.
#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }

    pub fn chance(&mut self, percent: u64) -> bool {
        self.next_u64() % 100 < percent
    }
}

const MAX_PATH_BASIS: usize = 48;
const MAX_WALKS_AT_SIX: u64 = 4000;

/// Deterministically samples a string algebra with at most `max_vertices`
/// vertices.
pub fn random_string_algebra(seed: u64, max_vertices: usize) -> StringAlgebra {
    let mut rng = Rng::new(seed);
    for _ in 0..500 {
        if let Some(sa) = try_sample(&mut rng, max_vertices) {
            return sa;
        }
    }
    panic!("no admissible string algebra found for seed {seed}");
}

fn try_sample(rng: &mut Rng, max_vertices: usize) -> Option<StringAlgebra> {
    let n = 2 + rng.below(max_vertices.saturating_sub(1).max(1));
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrow_target = 1 + rng.below(2 * n);
    let mut out_degree = vec![0usize; n];
    let mut in_degree = vec![0usize; n];
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let names = "abcdefghijklmnopqrstuvwxyz";
    for _ in 0..(arrow_target * 4) {
        if arrows.len() >= arrow_target || arrows.len() >= names.len() {
            break;
        }
        let s = rng.below(n);
        let t = rng.below(n);
        if out_degree[s] >= 2 || in_degree[t] >= 2 {
            continue;
        }
        let name = names.chars().nth(arrows.len()).unwrap().to_string();
        arrows.push((name, vertices[s].clone(), vertices[t].clone()));
        out_degree[s] += 1;
        in_degree[t] += 1;
    }
    let quiver = Quiver::new(vertices, arrows).ok()?;
    // Composable pairs seed the relation pool; a few composable triples add
    // longer relations so minimal kernel generators need not be arrows.
    let arrow_ids: Vec<_> = quiver.arrow_ids().collect();
    let mut relations: Vec<Vec<crate::quiver::ArrowId>> = Vec::new();
    for &x in &arrow_ids {
        for &y in &arrow_ids {
            if quiver.arrow(x).target != quiver.arrow(y).source {
                continue;
            }
            if rng.chance(25) {
                relations.push(vec![x, y]);
            } else if rng.chance(15) {
                for &z in &arrow_ids {
                    if quiver.arrow(y).target == quiver.arrow(z).source && rng.chance(50) {
                        relations.push(vec![x, y, z]);
                        break;
                    }
                }
            }
        }
    }
    // Greedy repair of the string conditions with length-2 relations.
    let pair_is_zero = |relations: &Vec<Vec<crate::quiver::ArrowId>>,
                        x: crate::quiver::ArrowId,
                        y: crate::quiver::ArrowId| {
        relations.iter().any(|r| r.as_slice() == [x, y])
    };
    loop {
        let mut fixed_something = false;
        for &a in &arrow_ids {
            let conts: Vec<_> = arrow_ids
                .iter()
                .copied()
                .filter(|&b| {
                    quiver.arrow(a).target == quiver.arrow(b).source
                        && !pair_is_zero(&relations, a, b)
                })
                .collect();
            if conts.len() > 1 {
                let keep = rng.below(conts.len());
                for (i, &b) in conts.iter().enumerate() {
                    if i != keep {
                        relations.push(vec![a, b]);
                    }
                }
                fixed_something = true;
            }
            let preds: Vec<_> = arrow_ids
                .iter()
                .copied()
                .filter(|&c| {
                    quiver.arrow(c).target == quiver.arrow(a).source
                        && !pair_is_zero(&relations, c, a)
                })
                .collect();
            if preds.len() > 1 {
                let keep = rng.below(preds.len());
                for (i, &c) in preds.iter().enumerate() {
                    if i != keep {
                        relations.push(vec![c, a]);
                    }
                }
                fixed_something = true;
            }
        }
        if !fixed_something {
            break;
        }
    }
    let bq = BoundQuiver::new(quiver, relations).ok()?;
    let sa = StringAlgebra::new(bq).ok()?;
    if sa.paths().len() > MAX_PATH_BASIS {
        return None;
    }
    // Sparse relation sets can make the walk population explode; keep the
    // property sweeps bounded by rejecting the most prolific samples.
    if crate::walk::count_generalized_walks(&sa, 6) > MAX_WALKS_AT_SIX {
        return None;
    }
    Some(sa)
}
