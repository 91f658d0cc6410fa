use std::fmt;

use super::GroupError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(k) => write!(f, "{k}"),
            Multiplicity::Infinite => f.write_str("inf"),
        }
    }
}

/// A direct sum of cyclic groups, listed as `(order, multiplicity)` blocks.
///
/// The concrete order sequence `a_1, a_2, ...` reads the blocks in order up
/// to the first infinite one; from there on the remaining blocks take turns,
/// one summand each, finite blocks dropping out once used up.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicSumSpec {
    summands: Vec<(u64, Multiplicity)>,
}

impl CyclicSumSpec {
    pub fn new(summands: Vec<(u64, Multiplicity)>) -> Result<Self, GroupError> {
        let mut infinite = Vec::new();
        for (i, &(order, mult)) in summands.iter().enumerate() {
            if order < 2 {
                return Err(GroupError::InvalidOrder { block: i, order });
            }
            match mult {
                Multiplicity::Finite(0) => return Err(GroupError::ZeroMultiplicity(i)),
                Multiplicity::Infinite if infinite.contains(&order) => {
                    return Err(GroupError::DuplicateInfiniteBlock(order))
                }
                Multiplicity::Infinite => infinite.push(order),
                Multiplicity::Finite(_) => {}
            }
        }
        Ok(CyclicSumSpec { summands })
    }

    /// One summand per listed order.
    pub fn finite(orders: &[u64]) -> Result<Self, GroupError> {
        Self::new(orders.iter().map(|&a| (a, Multiplicity::Finite(1))).collect())
    }

    /// Countably many copies of `Z_order`.
    pub fn infinite_power(order: u64) -> Result<Self, GroupError> {
        Self::new(vec![(order, Multiplicity::Infinite)])
    }

    pub fn summands(&self) -> &[(u64, Multiplicity)] {
        &self.summands
    }

    pub fn is_finite(&self) -> bool {
        self.summands.iter().all(|(_, m)| matches!(m, Multiplicity::Finite(_)))
    }

    /// Number of summands, if finite.
    pub fn rank(&self) -> Option<u64> {
        self.summands.iter().try_fold(0u64, |acc, (_, m)| match m {
            Multiplicity::Finite(k) => acc.checked_add(*k),
            Multiplicity::Infinite => None,
        })
    }

    /// The first `n` orders of the expansion (fewer if the group has fewer summands).
    pub fn orders(&self, n: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(n.min(1 << 16));
        let first_inf = self
            .summands
            .iter()
            .position(|(_, m)| *m == Multiplicity::Infinite)
            .unwrap_or(self.summands.len());
        for &(order, mult) in &self.summands[..first_inf] {
            let Multiplicity::Finite(k) = mult else { unreachable!() };
            for _ in 0..k {
                if out.len() == n {
                    return out;
                }
                out.push(order);
            }
        }
        let mut pool: Vec<(u64, Option<u64>)> = self.summands[first_inf..]
            .iter()
            .map(|&(order, mult)| match mult {
                Multiplicity::Finite(k) => (order, Some(k)),
                Multiplicity::Infinite => (order, None),
            })
            .collect();
        while out.len() < n && !pool.is_empty() {
            for slot in pool.iter_mut() {
                if out.len() == n {
                    break;
                }
                out.push(slot.0);
                if let Some(left) = slot.1.as_mut() {
                    *left -= 1;
                }
            }
            pool.retain(|(_, left)| *left != Some(0));
        }
        out
    }

    /// Distinct orders mentioned by the spec, ascending.
    pub fn listed_orders(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.summands.iter().map(|(a, _)| *a).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl fmt::Display for CyclicSumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("0");
        }
        for (i, (order, mult)) in self.summands.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match mult {
                Multiplicity::Finite(1) => write!(f, "Z{order}")?,
                m => write!(f, "Z{order}^{m}")?,
            }
        }
        Ok(())
    }
}

/// An element of a direct sum, as its digit string `p_1 ... p_n` with
/// trailing zeros removed. The identity is the empty string.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    digits: Vec<u64>,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement::default()
    }

    pub fn new(mut digits: Vec<u64>) -> Self {
        while digits.last() == Some(&0) {
            digits.pop();
        }
        GroupElement { digits }
    }

    /// Like [`GroupElement::new`], also checking `0 <= p_i < a_i`.
    pub fn checked(spec: &CyclicSumSpec, digits: Vec<u64>) -> Result<Self, GroupError> {
        let e = GroupElement::new(digits);
        e.validate(spec)?;
        Ok(e)
    }

    pub fn validate(&self, spec: &CyclicSumSpec) -> Result<(), GroupError> {
        let orders = spec.orders(self.digits.len());
        for (i, &p) in self.digits.iter().enumerate() {
            match orders.get(i) {
                Some(&a) if p < a => {}
                Some(&a) => return Err(GroupError::DigitOutOfRange { index: i + 1, digit: p, order: Some(a) }),
                None => return Err(GroupError::DigitOutOfRange { index: i + 1, digit: p, order: None }),
            }
        }
        Ok(())
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// `|p|`, the position of the last nonzero digit.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_identity(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    /// Digit `i`, 1-based, zero past the end.
    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i - 1).copied().unwrap_or(0)
    }

    /// Componentwise sum modulo the orders. Both elements must be valid for `spec`.
    pub fn add(&self, other: &GroupElement, spec: &CyclicSumSpec) -> GroupElement {
        let n = self.len().max(other.len());
        let orders = spec.orders(n);
        GroupElement::new(
            (1..=n)
                .map(|i| (self.digit(i) + other.digit(i)) % orders[i - 1])
                .collect(),
        )
    }

    pub fn neg(&self, spec: &CyclicSumSpec) -> GroupElement {
        let orders = spec.orders(self.len());
        GroupElement::new(
            self.digits
                .iter()
                .zip(orders)
                .map(|(&p, a)| (a - p) % a)
                .collect(),
        )
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.digits.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}
