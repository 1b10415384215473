use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{ShuffleSpec, ShuffleVariant};
use crate::combinatorics::{Permutation, SignedPermutation};
use crate::error::{Error, Result};

/// Identifier of the generator recorded with every simulation.
///
/// Trials are split into chunks of `CHUNK` consecutive trials; chunk `c` draws
/// from `ChaCha8Rng::seed_from_u64(seed)` on stream `c`. Results therefore do
/// not depend on the number of worker threads.
pub const RNG_ALGORITHM: &str = "chacha8/seed_from_u64/stream-per-4096-trials";

const CHUNK: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationResult {
    pub spec: ShuffleSpec,
    pub trials: u64,
    pub seed: u64,
    pub rng: &'static str,
    pub positive_sign_count: u64,
    /// Entry `d` counts trials ending at a permutation `w` with
    /// `des(w^{-1}) = d` (`des_B` for type B), `d = 0..=n`.
    pub descent_of_inverse_histogram: Vec<u64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SimulationResult {
    pub fn positive_fraction(&self) -> f64 {
        self.positive_sign_count as f64 / self.trials as f64
    }

    /// `(p̂ - p) / sqrt(p (1 - p) / trials)`, or `None` when `p ∈ {0, 1}`.
    pub fn z_score(&self, exact: f64) -> Option<f64> {
        let var = exact * (1.0 - exact) / self.trials as f64;
        (var > 0.0).then(|| (self.positive_fraction() - exact) / var.sqrt())
    }
}

/// Cuts `deck` into consecutive packets of the given sizes from the top. In
/// type B the even-numbered packets (counting from 1) are turned face up, which
/// reverses them and negates every card.
pub(super) fn cut(deck: &[i64], sizes: &[usize], face_up_even: bool) -> Vec<Vec<i64>> {
    debug_assert_eq!(sizes.iter().sum::<usize>(), deck.len());
    let mut start = 0;
    sizes
        .iter()
        .enumerate()
        .map(|(i, &len)| {
            let mut packet = deck[start..start + len].to_vec();
            start += len;
            if face_up_even && i % 2 == 1 {
                packet.reverse();
                packet.iter_mut().for_each(|c| *c = -*c);
            }
            packet
        })
        .collect()
}

/// Drops the packets into a new deck, top to bottom. `choose` is given the
/// remaining packet sizes and returns the packet whose top card goes next.
pub(super) fn drop_cards(
    packets: &[Vec<i64>],
    mut choose: impl FnMut(&[usize], usize) -> usize,
) -> Vec<i64> {
    let mut next = vec![0usize; packets.len()];
    let mut remaining: Vec<usize> = packets.iter().map(Vec::len).collect();
    let n: usize = remaining.iter().sum();
    let mut out = Vec::with_capacity(n);
    for left in (1..=n).rev() {
        let i = choose(&remaining, left);
        debug_assert!(remaining[i] > 0);
        out.push(packets[i][next[i]]);
        next[i] += 1;
        remaining[i] -= 1;
    }
    out
}

fn riffle<R: Rng>(deck: &[i64], a: usize, face_up_even: bool, rng: &mut R) -> Vec<i64> {
    // Multinomial cut as n independent uniform box draws.
    let mut sizes = vec![0usize; a];
    for _ in 0..deck.len() {
        sizes[rng.random_range(0..a)] += 1;
    }
    let packets = cut(deck, &sizes, face_up_even);
    drop_cards(&packets, |remaining, left| {
        let mut u = rng.random_range(0..left);
        for (i, &r) in remaining.iter().enumerate() {
            if u < r {
                return i;
            }
            u -= r;
        }
        unreachable!("u < total remaining")
    })
}

/// Sign and descents of the inverse of the permutation read off a deck.
pub(super) fn observe(deck: &[i64], group_b: bool) -> (bool, usize) {
    if group_b {
        let w = SignedPermutation::from_values(deck).expect("deck is a signed permutation");
        (w.sign().is_plus(), w.inverse().descent_count())
    } else {
        let word = deck.iter().map(|&c| c as usize).collect();
        let w = Permutation::new(word).expect("deck is a permutation");
        (w.sign().is_plus(), w.inverse().descent_count())
    }
}

struct Tally {
    positive: u64,
    histogram: Vec<u64>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.positive += other.positive;
        for (a, b) in self.histogram.iter_mut().zip(other.histogram) {
            *a += b;
        }
        self
    }
}

/// Runs `trials` independent experiments, each applying `spec.iterations`
/// shuffles to a fresh deck in identity order.
pub fn simulate(spec: &ShuffleSpec, trials: u64, seed: u64) -> Result<SimulationResult> {
    spec.validate()?;
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let group_b = match spec.variant {
        ShuffleVariant::Gsr => false,
        ShuffleVariant::TypeB => true,
        ShuffleVariant::Shelf => {
            return Err(Error::Unsupported(
                "the shelf shuffler is available as an exact formula only".into(),
            ))
        }
    };
    let a = usize::try_from(spec.parameter)
        .map_err(|_| Error::InvalidArgument("shuffle parameter too large".into()))?;
    let n = spec.n;
    let started = Instant::now();
    let chunks = trials.div_ceil(CHUNK);
    let empty = || Tally {
        positive: 0,
        histogram: vec![0; n + 1],
    };
    let tally = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let mut t = empty();
            let identity: Vec<i64> = (1..=n as i64).collect();
            for _ in 0..CHUNK.min(trials - c * CHUNK) {
                let mut deck = identity.clone();
                for _ in 0..spec.iterations {
                    deck = riffle(&deck, a, group_b, &mut rng);
                }
                let (plus, d) = observe(&deck, group_b);
                t.positive += plus as u64;
                t.histogram[d] += 1;
            }
            t
        })
        .reduce(empty, Tally::merge);
    Ok(SimulationResult {
        spec: *spec,
        trials,
        seed,
        rng: RNG_ALGORITHM,
        positive_sign_count: tally.positive,
        descent_of_inverse_histogram: tally.histogram,
        elapsed: started.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;
    use num_rational::BigRational;
    use num_traits::{ToPrimitive, Zero};
    use std::collections::BTreeMap;

    use crate::exact::{factorial, ratio};

    /// Every composition of `n` into `a` nonnegative parts.
    fn compositions(n: usize, a: usize) -> Vec<Vec<usize>> {
        if a == 1 {
            return vec![vec![n]];
        }
        (0..=n)
            .flat_map(|first| {
                compositions(n - first, a - 1)
                    .into_iter()
                    .map(move |mut rest| {
                        rest.insert(0, first);
                        rest
                    })
            })
            .collect()
    }

    /// Every drop order with its probability under the proportional rule.
    fn drop_orders(
        remaining: &mut Vec<usize>,
        prefix: &mut Vec<usize>,
        p: BigRational,
        out: &mut Vec<(Vec<usize>, BigRational)>,
    ) {
        let left: usize = remaining.iter().sum();
        if left == 0 {
            out.push((prefix.clone(), p));
            return;
        }
        for i in 0..remaining.len() {
            if remaining[i] == 0 {
                continue;
            }
            let q = &p * ratio(remaining[i] as i64, left as i64);
            remaining[i] -= 1;
            prefix.push(i);
            drop_orders(remaining, prefix, q, out);
            prefix.pop();
            remaining[i] += 1;
        }
    }

    /// Exact distribution of the deck after one pass of the stated mechanism,
    /// starting from `start` weighted by its probability.
    fn one_pass(
        dist: &BTreeMap<Vec<i64>, BigRational>,
        n: usize,
        a: usize,
        group_b: bool,
    ) -> BTreeMap<Vec<i64>, BigRational> {
        let mut out: BTreeMap<Vec<i64>, BigRational> = BTreeMap::new();
        let a_n = BigRational::from(crate::exact::pow_u64(a as u64, n as u64));
        for sizes in compositions(n, a) {
            let multinomial = sizes
                .iter()
                .fold(BigRational::from(factorial(n)), |acc, &j| {
                    acc / BigRational::from(factorial(j))
                });
            let p_cut = multinomial / &a_n;
            let mut orders = Vec::new();
            drop_orders(&mut sizes.clone(), &mut Vec::new(), p_cut, &mut orders);
            for (deck, p_deck) in dist {
                let packets = cut(deck, &sizes, group_b);
                for (order, p_order) in &orders {
                    let mut it = order.iter();
                    let new = drop_cards(&packets, |_, _| *it.next().unwrap());
                    *out.entry(new).or_insert_with(BigRational::zero) += p_deck * p_order;
                }
            }
        }
        out
    }

    fn mechanism(n: usize, a: usize, k: u32, group_b: bool) -> BTreeMap<Vec<i64>, BigRational> {
        let mut dist = BTreeMap::new();
        dist.insert((1..=n as i64).collect::<Vec<_>>(), ratio(1, 1));
        for _ in 0..k {
            dist = one_pass(&dist, n, a, group_b);
        }
        dist
    }

    #[test]
    fn mechanism_matches_gsr_formula() {
        for (n, a, k) in [(3, 2, 1), (4, 2, 1), (4, 3, 1), (3, 2, 2), (5, 2, 1)] {
            let dist = mechanism(n, a, k, false);
            let a_eff = (a as u64).pow(k);
            let caps = crate::combinatorics::EnumerationCaps::default();
            for w in crate::combinatorics::enumerate_symmetric(n, &caps).unwrap() {
                let key: Vec<i64> = w.word().iter().map(|&x| x as i64).collect();
                let got = dist.get(&key).cloned().unwrap_or_else(BigRational::zero);
                assert_eq!(got, gsr_probability(&w, a_eff), "n={n} a={a} k={k} w={w}");
            }
        }
    }

    #[test]
    fn mechanism_matches_type_b_formula() {
        for (n, a, k) in [
            (1, 3, 1),
            (2, 3, 1),
            (3, 3, 1),
            (2, 5, 1),
            (2, 3, 2),
            (4, 3, 1),
        ] {
            let dist = mechanism(n, a, k, true);
            let a_eff = (a as u64).pow(k);
            let caps = crate::combinatorics::EnumerationCaps::default();
            for w in crate::combinatorics::enumerate_hyperoctahedral(n, &caps).unwrap() {
                let got = dist
                    .get(&w.values())
                    .cloned()
                    .unwrap_or_else(BigRational::zero);
                assert_eq!(
                    got,
                    b_shuffle_probability(&w, a_eff).unwrap(),
                    "n={n} a={a} k={k} w={:?}",
                    w.values()
                );
            }
        }
    }

    #[test]
    fn identity_shuffle_is_identity() {
        let spec = ShuffleSpec::new(ShuffleVariant::Gsr, 6, 1, 3).unwrap();
        let r = simulate(&spec, 1000, 7).unwrap();
        assert_eq!(r.positive_sign_count, 1000);
        assert_eq!(r.descent_of_inverse_histogram[0], 1000);
    }

    #[test]
    fn deterministic_and_thread_independent() {
        let spec = ShuffleSpec::new(ShuffleVariant::TypeB, 5, 3, 2).unwrap();
        let a = simulate(&spec, 10_000, 42).unwrap();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let b = pool.install(|| simulate(&spec, 10_000, 42).unwrap());
        assert_eq!(a.positive_sign_count, b.positive_sign_count);
        assert_eq!(
            a.descent_of_inverse_histogram,
            b.descent_of_inverse_histogram
        );
        let c = simulate(&spec, 10_000, 43).unwrap();
        assert_ne!(
            a.descent_of_inverse_histogram,
            c.descent_of_inverse_histogram
        );
        assert_eq!(a.descent_of_inverse_histogram.iter().sum::<u64>(), 10_000);
    }

    #[test]
    fn shelf_is_exact_only() {
        let spec = ShuffleSpec::new(ShuffleVariant::Shelf, 5, 2, 1).unwrap();
        assert!(matches!(simulate(&spec, 10, 1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn sign_fraction_within_four_sigma() {
        let spec = ShuffleSpec::new(ShuffleVariant::Gsr, 3, 2, 1).unwrap();
        let r = simulate(&spec, 200_000, 20_240_601).unwrap();
        let z = r.z_score(0.75).unwrap();
        assert!(z.abs() < 4.0, "z = {z}");
    }

    #[test]
    fn descent_histogram_within_four_sigma() {
        let spec = ShuffleSpec::new(ShuffleVariant::Gsr, 4, 2, 1).unwrap();
        let trials = 200_000u64;
        let r = simulate(&spec, trials, 99).unwrap();
        let exact = exact_descent_histogram(&spec).unwrap();
        for (d, (count, p)) in r
            .descent_of_inverse_histogram
            .iter()
            .zip(&exact)
            .enumerate()
        {
            let p = p.to_f64().unwrap();
            let sd = (trials as f64 * p * (1.0 - p)).sqrt();
            let diff = (*count as f64 - trials as f64 * p).abs();
            assert!(diff <= 4.0 * sd, "d={d} count={count} p={p}");
        }
    }

    #[test]
    fn doubling_trials_halves_variance() {
        // Empirical variance of the positive fraction across 40 seeds.
        let spec = ShuffleSpec::new(ShuffleVariant::Gsr, 4, 2, 1).unwrap();
        let variance = |trials: u64| -> f64 {
            let xs: Vec<f64> = (0..40)
                .map(|s| {
                    simulate(&spec, trials, 1000 + s)
                        .unwrap()
                        .positive_fraction()
                })
                .collect();
            let mean = xs.iter().sum::<f64>() / xs.len() as f64;
            xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64
        };
        let ratio = variance(2000) / variance(4000);
        // The sample-variance ratio of 40 runs is F(39, 39) distributed around 2.
        assert!((0.9..4.5).contains(&ratio), "ratio = {ratio}");
    }
}
