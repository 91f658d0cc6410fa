use std::fmt;

use super::{CyclicSumSpec, GroupError, Multiplicity};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn valuation(mut n: u64, p: u64) -> u64 {
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

/// The order of the `p`-torsion subgroup: `p^exponent`, or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SylowNumber {
    Finite { prime: u64, exponent: u64 },
    Infinite,
}

impl fmt::Display for SylowNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SylowNumber::Finite { prime, exponent } => write!(f, "{prime}^{exponent}"),
            SylowNumber::Infinite => f.write_str("inf"),
        }
    }
}

pub fn sylow_number(spec: &CyclicSumSpec, p: u64) -> Result<SylowNumber, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let mut exponent = 0u64;
    for &(order, mult) in spec.summands() {
        let v = valuation(order, p);
        if v == 0 {
            continue;
        }
        match mult {
            Multiplicity::Infinite => return Ok(SylowNumber::Infinite),
            Multiplicity::Finite(k) => exponent += v * k,
        }
    }
    Ok(SylowNumber::Finite { prime: p, exponent })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylowRow {
    pub prime: u64,
    pub left: SylowNumber,
    pub right: SylowNumber,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProtasovReport {
    pub table: Vec<SylowRow>,
    pub equivalent: bool,
    /// Least prime whose Sylow numbers differ.
    pub witness: Option<u64>,
}

/// Compares Sylow numbers at every prime dividing a listed order of either
/// group; all other primes give 1 on both sides. Equal tables mean the two
/// direct sums are bi-uniformly equivalent.
pub fn protasov_equivalent(g: &CyclicSumSpec, h: &CyclicSumSpec) -> ProtasovReport {
    let mut primes: Vec<u64> = g
        .listed_orders()
        .into_iter()
        .chain(h.listed_orders())
        .flat_map(prime_factors)
        .collect();
    primes.sort_unstable();
    primes.dedup();
    let table: Vec<SylowRow> = primes
        .into_iter()
        .map(|prime| SylowRow {
            prime,
            left: sylow_number(g, prime).expect("prime"),
            right: sylow_number(h, prime).expect("prime"),
        })
        .collect();
    let witness = table.iter().find(|r| r.left != r.right).map(|r| r.prime);
    ProtasovReport {
        equivalent: witness.is_none(),
        witness,
        table,
    }
}
