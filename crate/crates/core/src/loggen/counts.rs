use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::automata::Dfa;
use crate::error::Error;

/// Number type for path counts. Fixed-width types report overflow;
/// `f64` trades exactness for range.
pub trait PathCount: Clone + PartialOrd + Send + Sync + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    /// `self + x * w`, or `None` on overflow.
    fn add_weighted(&self, x: &Self, w: u64) -> Option<Self>;
    fn sub(&self, x: &Self) -> Self;
    fn is_zero(&self) -> bool;
    /// Uniform value in `[0, self)`.
    fn sample_below<R: Rng + ?Sized>(&self, rng: &mut R) -> Self;
    fn to_f64(&self) -> f64;
}

impl PathCount for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add_weighted(&self, x: &Self, w: u64) -> Option<Self> {
        Some(self + x * w)
    }
    fn sub(&self, x: &Self) -> Self {
        self - x
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sample_below<R: Rng + ?Sized>(&self, rng: &mut R) -> Self {
        rng.gen_biguint_below(self)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::INFINITY)
    }
}

macro_rules! fixed_width {
    ($t:ty) => {
        impl PathCount for $t {
            fn zero() -> Self {
                0
            }
            fn one() -> Self {
                1
            }
            fn add_weighted(&self, x: &Self, w: u64) -> Option<Self> {
                x.checked_mul(<$t>::from(w))?.checked_add(*self)
            }
            fn sub(&self, x: &Self) -> Self {
                self - x
            }
            fn is_zero(&self) -> bool {
                *self == 0
            }
            fn sample_below<R: Rng + ?Sized>(&self, rng: &mut R) -> Self {
                rng.gen_range(0..*self)
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
        }
    };
}

fixed_width!(u64);
fixed_width!(u128);

impl PathCount for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add_weighted(&self, x: &Self, w: u64) -> Option<Self> {
        let v = self + x * w as f64;
        v.is_finite().then_some(v)
    }
    fn sub(&self, x: &Self) -> Self {
        self - x
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn sample_below<R: Rng + ?Sized>(&self, rng: &mut R) -> Self {
        rng.gen::<f64>() * self
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// `count(s, r)`: weighted number of accepted completions of length `r`
/// from state `s`. Named classes weigh 1, `Other` weighs the number of
/// concrete activities it stands for.
#[derive(Debug, Clone)]
pub struct PathCountTable<C> {
    /// `by_remaining[r][s]`
    by_remaining: Vec<Vec<C>>,
    weights: Vec<u64>,
    initial: usize,
}

impl<C: PathCount> PathCountTable<C> {
    pub fn build(dfa: &Dfa, other_weight: u64, length: usize) -> Result<Self, Error> {
        let mut weights = vec![1; dfa.num_classes()];
        weights[dfa.other_class()] = other_weight;
        let n = dfa.num_states();
        let mut by_remaining: Vec<Vec<C>> = Vec::with_capacity(length + 1);
        by_remaining.push((0..n).map(|s| if dfa.is_accepting(s) { C::one() } else { C::zero() }).collect());
        for r in 1..=length {
            let prev = &by_remaining[r - 1];
            let mut row = Vec::with_capacity(n);
            for s in 0..n {
                let mut acc = C::zero();
                for (c, &w) in weights.iter().enumerate() {
                    if w > 0 {
                        acc = acc
                            .add_weighted(&prev[dfa.step(s, c)], w)
                            .ok_or_else(|| Error::Generator(format!("path count overflows at length {r}")))?;
                    }
                }
                row.push(acc);
            }
            by_remaining.push(row);
        }
        Ok(PathCountTable { by_remaining, weights, initial: dfa.initial() })
    }

    pub fn length(&self) -> usize {
        self.by_remaining.len() - 1
    }

    pub fn count(&self, state: usize, remaining: usize) -> &C {
        &self.by_remaining[remaining][state]
    }

    /// Accepted strings of the full length.
    pub fn total(&self) -> &C {
        self.count(self.initial, self.length())
    }

    pub fn weight(&self, class: usize) -> u64 {
        self.weights[class]
    }

    /// Uniformly samples a class sequence of the full length.
    pub fn sample_classes<R: Rng + ?Sized>(&self, dfa: &Dfa, rng: &mut R) -> Option<Vec<usize>> {
        if self.total().is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(self.length());
        let mut s = self.initial;
        for r in (1..=self.length()).rev() {
            let mut x = self.count(s, r).sample_below(rng);
            let mut chosen = None;
            let mut last = None;
            for (c, &w) in self.weights.iter().enumerate() {
                let next = dfa.step(s, c);
                let mass = C::zero().add_weighted(self.count(next, r - 1), w).expect("bounded by count(s, r)");
                if mass.is_zero() {
                    continue;
                }
                last = Some(c);
                if x < mass {
                    chosen = Some(c);
                    break;
                }
                x = x.sub(&mass);
            }
            let c = chosen.or(last)?;
            out.push(c);
            s = dfa.step(s, c);
        }
        Some(out)
    }
}
