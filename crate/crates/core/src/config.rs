//! Run configuration and the randomized max-rank search shared by the
//! secant and Hadamard dimension engines.
//!
//! A rank computed at a random point over `F_p` never exceeds the generic
//! rank in characteristic zero, so the maximum over trials is a certified
//! lower bound. Trials stop early once the a-priori upper bound is reached.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{is_prime, prev_prime, PrimeField, DEFAULT_PRIME};
use crate::linalg::{rank, FieldMatrix};
use crate::par;
use crate::torus::{random_torus_points, ParameterMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DimConfig {
    pub prime: u64,
    /// Random points per round.
    pub trials: usize,
    pub seed: u64,
    /// Extra rounds with fresh seeds when the bound is not reached.
    pub max_retries: usize,
    /// Further rounds, each over the next prime below the previous one.
    pub alternate_primes: usize,
    /// Run trials on the rayon pool (ignored without the `parallel` feature).
    #[serde(skip)]
    pub parallel: bool,
}

impl Default for DimConfig {
    fn default() -> Self {
        DimConfig {
            prime: DEFAULT_PRIME,
            trials: 3,
            seed: 0,
            max_retries: 5,
            alternate_primes: 2,
            parallel: true,
        }
    }
}

impl DimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.prime <= 1 << 16 {
            return Err(Error::invalid(format!(
                "prime {} must exceed 2^16",
                self.prime
            )));
        }
        if !is_prime(self.prime) {
            return Err(Error::NotPrime(self.prime));
        }
        if self.trials == 0 {
            return Err(Error::invalid("trials must be at least 1"));
        }
        Ok(())
    }

    pub fn field(&self) -> Result<PrimeField> {
        self.validate()?;
        PrimeField::new(self.prime)
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }
}

/// Outcome of a max-rank search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankSearch {
    pub rank: usize,
    /// Whether `rank` reached the supplied upper bound.
    pub reached_bound: bool,
    /// Number of random points evaluated in total.
    pub evaluations: usize,
    /// Rounds run: 1 + fresh-seed retries + alternate-prime rounds.
    pub rounds: usize,
    /// Prime of the round that produced `rank`.
    pub prime: u64,
    /// Seed of the trial that produced `rank`.
    pub seed: u64,
}

/// Maximize `rank(build(field, Y))` over random points `Y` of shape
/// `count x dim`. Trial `t` uses seed `config.seed + t`, counted across
/// rounds.
pub fn max_rank_search<B>(
    config: &DimConfig,
    dim: usize,
    count: usize,
    upper_bound: usize,
    build: B,
) -> Result<RankSearch>
where
    B: Fn(&PrimeField, &ParameterMatrix<u64>) -> Result<FieldMatrix> + Sync + Send,
{
    let base = config.field()?;
    let mut schedule = vec![base; 1 + config.max_retries];
    let mut p = base.modulus();
    for _ in 0..config.alternate_primes {
        match prev_prime(p) {
            Some(q) if q > 1 << 16 => {
                p = q;
                schedule.push(PrimeField::new(q)?);
            }
            _ => break,
        }
    }

    let mut best = RankSearch {
        rank: 0,
        reached_bound: false,
        evaluations: 0,
        rounds: 0,
        prime: base.modulus(),
        seed: config.seed,
    };
    let mut next_trial = 0u64;
    for field in schedule {
        let seeds: Vec<u64> = (0..config.trials as u64)
            .map(|t| config.seed.wrapping_add(next_trial + t))
            .collect();
        next_trial += config.trials as u64;
        let ranks = par::map(seeds.clone(), config.parallel, |s| {
            let y = random_torus_points(dim, count, s, &field);
            build(&field, &y).map(|k| rank(&field, &k))
        });
        best.rounds += 1;
        for (s, r) in seeds.into_iter().zip(ranks) {
            let r = r?;
            best.evaluations += 1;
            if r > best.rank || best.evaluations == 1 {
                best.rank = r;
                best.prime = field.modulus();
                best.seed = s;
            }
        }
        if best.rank >= upper_bound {
            best.reached_bound = true;
            break;
        }
    }
    Ok(best)
}
