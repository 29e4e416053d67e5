//! Intervals of length greater than 2 as colors, disjoint inclusions as
//! operations, the morphism to the associative operad, and the lattice
//! symmetries (integer translations and time reversal).

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::cochain::{support_within, Cochain, LatticeFunction, Site};
use crate::harness::oracle::{self, TruncationSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperadError {
    #[error("interval ({0},{1}) is empty: need a < b")]
    Empty(String, String),
    #[error("interval {0} has length <= 2 and is not a color")]
    NotAColor(String),
    #[error("input intervals {0} and {1} overlap")]
    Overlap(String, String),
    #[error("input interval {0} is not contained in {1}")]
    NotContained(String, String),
    #[error("argument {index} is not supported in {interval}")]
    SupportViolation { index: usize, interval: String },
    #[error("cannot parse interval from {0:?}")]
    Parse(String),
    #[error("expected {expected} permutations, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("{0} is not contained in {1}; inclusion required")]
    NotNested(String, String),
    #[error(transparent)]
    Oracle(#[from] oracle::OracleError),
}

/// Open interval `(a, b)` with rational endpoints.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    a: BigRational,
    b: BigRational,
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn floor_i64(q: &BigRational) -> i64 {
    i64::try_from(q.floor().to_integer()).expect("interval endpoint out of range")
}

fn ceil_i64(q: &BigRational) -> i64 {
    i64::try_from(q.ceil().to_integer()).expect("interval endpoint out of range")
}

impl Interval {
    pub fn new(a: BigRational, b: BigRational) -> Result<Self, OperadError> {
        if a >= b {
            return Err(OperadError::Empty(a.to_string(), b.to_string()));
        }
        Ok(Self { a, b })
    }

    /// An interval that must also be a color (length > 2).
    pub fn color(a: BigRational, b: BigRational) -> Result<Self, OperadError> {
        let i = Self::new(a, b)?;
        if !i.is_color() {
            return Err(OperadError::NotAColor(i.to_string()));
        }
        Ok(i)
    }

    pub fn from_ints(a: i64, b: i64) -> Result<Self, OperadError> {
        Self::new(int(a), int(b))
    }

    /// `(an/ad, bn/bd)`.
    pub fn from_ratios(a: (i64, i64), b: (i64, i64)) -> Result<Self, OperadError> {
        Self::new(
            BigRational::new(a.0.into(), a.1.into()),
            BigRational::new(b.0.into(), b.1.into()),
        )
    }

    pub fn start(&self) -> &BigRational {
        &self.a
    }

    pub fn end(&self) -> &BigRational {
        &self.b
    }

    pub fn length(&self) -> BigRational {
        &self.b - &self.a
    }

    pub fn is_color(&self) -> bool {
        self.length() > int(2)
    }

    pub fn require_color(&self) -> Result<(), OperadError> {
        if self.is_color() {
            Ok(())
        } else {
            Err(OperadError::NotAColor(self.to_string()))
        }
    }

    /// `Z ∩ (a, b)`.
    pub fn field_sites(&self) -> RangeInclusive<Site> {
        (floor_i64(&self.a) + 1)..=(ceil_i64(&self.b) - 1)
    }

    /// `Z ∩ (a+1, b-1)`.
    pub fn antifield_sites(&self) -> RangeInclusive<Site> {
        (floor_i64(&self.a) + 2)..=(ceil_i64(&self.b) - 2)
    }

    pub fn contains_field_site(&self, s: Site) -> bool {
        self.field_sites().contains(&s)
    }

    pub fn contains_antifield_site(&self, s: Site) -> bool {
        self.antifield_sites().contains(&s)
    }

    /// `self ⊂ other` as open sets.
    pub fn is_within(&self, other: &Interval) -> bool {
        other.a <= self.a && self.b <= other.b
    }

    /// `self < other`: `self` lies entirely to the left.
    pub fn precedes(&self, other: &Interval) -> bool {
        self.b <= other.a
    }

    pub fn is_disjoint(&self, other: &Interval) -> bool {
        self.precedes(other) || other.precedes(self)
    }

    pub fn translate(&self, n: i64) -> Interval {
        Interval {
            a: &self.a + int(n),
            b: &self.b + int(n),
        }
    }

    /// `-I`.
    pub fn reverse(&self) -> Interval {
        Interval {
            a: -self.b.clone(),
            b: -self.a.clone(),
        }
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            a: self.a.clone().min(other.a.clone()),
            b: self.b.clone().max(other.b.clone()),
        }
    }
}

fn write_endpoint(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_endpoint(f, &self.a)?;
        write!(f, ",")?;
        write_endpoint(f, &self.b)?;
        write!(f, ")")
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses `p/q` or an integer.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

impl FromStr for Interval {
    type Err = OperadError;

    /// Accepts `a,b` or `(a,b)` with rational endpoints.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(t);
        let (a, b) = t
            .split_once(',')
            .ok_or_else(|| OperadError::Parse(s.to_string()))?;
        let a = parse_rational(a).ok_or_else(|| OperadError::Parse(s.to_string()))?;
        let b = parse_rational(b).ok_or_else(|| OperadError::Parse(s.to_string()))?;
        Interval::new(a, b)
    }
}

/// A disjoint inclusion `I_1 ⊔ ... ⊔ I_n ⊂ J` of colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalOperation {
    inputs: Vec<Interval>,
    output: Interval,
}

impl IntervalOperation {
    pub fn new(inputs: Vec<Interval>, output: Interval) -> Result<Self, OperadError> {
        output.require_color()?;
        for (i, a) in inputs.iter().enumerate() {
            a.require_color()?;
            if !a.is_within(&output) {
                return Err(OperadError::NotContained(a.to_string(), output.to_string()));
            }
            for b in &inputs[i + 1..] {
                if !a.is_disjoint(b) {
                    return Err(OperadError::Overlap(a.to_string(), b.to_string()));
                }
            }
        }
        Ok(Self { inputs, output })
    }

    pub fn inputs(&self) -> &[Interval] {
        &self.inputs
    }

    pub fn output(&self) -> &Interval {
        &self.output
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    /// Operadic composition: substitutes `inner[i]` into input `i`.
    pub fn compose(&self, inner: &[IntervalOperation]) -> Result<IntervalOperation, OperadError> {
        if inner.len() != self.arity() {
            return Err(OperadError::Arity {
                expected: self.arity(),
                got: inner.len(),
            });
        }
        for (slot, op) in self.inputs.iter().zip(inner) {
            if op.output() != slot {
                return Err(OperadError::NotContained(op.output().to_string(), slot.to_string()));
            }
        }
        let inputs = inner.iter().flat_map(|op| op.inputs.iter().cloned()).collect();
        IntervalOperation::new(inputs, self.output.clone())
    }

    pub fn act(&self, g: Symmetry) -> IntervalOperation {
        IntervalOperation {
            inputs: self.inputs.iter().map(|i| g.act_on_interval(i)).collect(),
            output: g.act_on_interval(&self.output),
        }
    }
}

/// Permutation of `{0..n-1}`, stored as `i -> perm[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// Panics unless `images` is a bijection of `{0..n-1}`.
    pub fn from_images(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(i < images.len() && !seen[i], "not a permutation: {images:?}");
            seen[i] = true;
        }
        Self(images)
    }

    /// The order-reversing permutation `i -> n-1-i`.
    pub fn reversal(n: usize) -> Self {
        Self((0..n).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`.
    pub fn then_after(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// Composition in the associative operad: block `i` of the result holds
    /// `inner[i]`, and blocks are placed in the order prescribed by `self`.
    pub fn operadic_compose(&self, inner: &[Permutation]) -> Permutation {
        assert_eq!(inner.len(), self.len());
        let mut offsets = vec![0; self.len()];
        let by_rank = self.inverse();
        let mut acc = 0;
        for rank in 0..self.len() {
            let block = by_rank.apply(rank);
            offsets[block] = acc;
            acc += inner[block].len();
        }
        let mut images = Vec::with_capacity(acc);
        for (block, perm) in inner.iter().enumerate() {
            images.extend(perm.0.iter().map(|&j| offsets[block] + j));
        }
        Permutation(images)
    }
}

/// The unique `σ` with `I_{σ^-1(0)} < I_{σ^-1(1)} < ...`; `σ(i)` is the
/// left-to-right rank of input `i`.
pub fn gamma_permutation(op: &IntervalOperation) -> Permutation {
    let mut order: Vec<usize> = (0..op.arity()).collect();
    order.sort_by(|&i, &j| op.inputs[i].a.cmp(&op.inputs[j].a));
    Permutation(order).inverse()
}

/// An element of the symmetry group generated by integer translations and
/// time reversal, acting on sites by `x -> ±x + shift`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Symmetry {
    pub reflect: bool,
    pub shift: i64,
}

/// Generators of the symmetry group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Translation(i64),
    Reversal,
}

impl From<GroupElement> for Symmetry {
    fn from(g: GroupElement) -> Self {
        match g {
            GroupElement::Translation(n) => Symmetry::translation(n),
            GroupElement::Reversal => Symmetry::reversal(),
        }
    }
}

impl Symmetry {
    pub fn identity() -> Self {
        Self {
            reflect: false,
            shift: 0,
        }
    }

    pub fn translation(n: i64) -> Self {
        Self {
            reflect: false,
            shift: n,
        }
    }

    pub fn reversal() -> Self {
        Self {
            reflect: true,
            shift: 0,
        }
    }

    pub fn act_on_site(self, x: Site) -> Site {
        if self.reflect {
            -x + self.shift
        } else {
            x + self.shift
        }
    }

    /// `self ∘ other`.
    pub fn compose(self, other: Symmetry) -> Symmetry {
        let shift = self.act_on_site(other.shift);
        Symmetry {
            reflect: self.reflect != other.reflect,
            shift,
        }
    }

    pub fn inverse(self) -> Symmetry {
        if self.reflect {
            self
        } else {
            Symmetry::translation(-self.shift)
        }
    }

    pub fn act_on_interval(self, i: &Interval) -> Interval {
        let i = if self.reflect { i.reverse() } else { i.clone() };
        i.translate(self.shift)
    }

    pub fn act_on_cochain(self, c: &Cochain) -> Cochain {
        c.map_sites(|x| self.act_on_site(x))
    }

    pub fn act_on_function(self, f: &LatticeFunction) -> LatticeFunction {
        LatticeFunction::from_pairs(f.iter().map(|(s, v)| (self.act_on_site(s), v.clone())))
    }
}

/// Shifts every generator site by `n`: `delta[x] -> delta[x+n]`.
pub fn translate(c: &Cochain, n: i64) -> Cochain {
    Symmetry::translation(n).act_on_cochain(c)
}

/// `delta[x] -> delta[-x]`, `bdelta[x] -> bdelta[-x]`, with Koszul signs.
pub fn time_reversal(c: &Cochain) -> Cochain {
    Symmetry::reversal().act_on_cochain(c)
}

fn check_operation<T>(
    args: &[(T, Interval)],
    target: &Interval,
) -> Result<IntervalOperation, OperadError> {
    IntervalOperation::new(args.iter().map(|(_, i)| i.clone()).collect(), target.clone())
}

/// Structure map of the quantum observables: include each argument into
/// `target` and multiply in the given order.
pub fn factorization_product(
    args: &[(Cochain, Interval)],
    target: &Interval,
) -> Result<Cochain, OperadError> {
    check_operation(args, target)?;
    let mut acc = Cochain::one();
    for (index, (c, i)) in args.iter().enumerate() {
        if !support_within(c, i) {
            return Err(OperadError::SupportViolation {
                index,
                interval: i.to_string(),
            });
        }
        acc = &acc * c;
    }
    Ok(acc)
}

/// Structure map of the two-term complexes: the pointwise sum.
pub fn sum_operation_v(
    args: &[(LatticeFunction, Interval)],
    target: &Interval,
) -> Result<LatticeFunction, OperadError> {
    check_operation(args, target)?;
    let mut acc = LatticeFunction::zero();
    for (index, (f, i)) in args.iter().enumerate() {
        if !f.support().iter().all(|&s| i.contains_field_site(s)) {
            return Err(OperadError::SupportViolation {
                index,
                interval: i.to_string(),
            });
        }
        acc = &acc + f;
    }
    Ok(acc)
}

/// Whether the inclusion `inner ⊂ outer` induces an isomorphism on degree-0
/// cohomology of the truncated quantum observables at `(hbar, alpha)`.
pub fn local_constancy_check(
    inner: &Interval,
    outer: &Interval,
    maxdeg: u32,
    hbar: &BigRational,
    alpha: &BigRational,
) -> Result<bool, OperadError> {
    inner.require_color()?;
    outer.require_color()?;
    if !inner.is_within(outer) {
        return Err(OperadError::NotNested(inner.to_string(), outer.to_string()));
    }
    let spec = TruncationSpec::new(outer.clone(), maxdeg, hbar.clone(), alpha.clone())?;
    Ok(oracle::inclusion_is_h0_iso(inner, &spec)?)
}

/// Half-integer helper used by the default geometries.
pub fn half(n: i64) -> BigRational {
    BigRational::new(n.into(), 2.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: i64, b: i64) -> Interval {
        Interval::from_ints(a, b).unwrap()
    }

    #[test]
    fn site_sets() {
        let i = Interval::from_ratios((-4, 1), (-3, 2)).unwrap();
        assert_eq!(i.field_sites(), -3..=-2);
        assert!(i.antifield_sites().is_empty());
        let j = iv(-4, 4);
        assert_eq!(j.field_sites(), -3..=3);
        assert_eq!(j.antifield_sites(), -2..=2);
        assert!(!iv(0, 2).is_color());
        assert!(Interval::from_ratios((0, 1), (5, 2)).unwrap().is_color());
    }

    #[test]
    fn gamma_examples() {
        let unary = IntervalOperation::new(vec![iv(0, 3)], iv(0, 8)).unwrap();
        assert!(gamma_permutation(&unary).is_identity());
        let ordered = IntervalOperation::new(vec![iv(0, 3), iv(4, 7)], iv(0, 8)).unwrap();
        assert!(gamma_permutation(&ordered).is_identity());
        let swapped = IntervalOperation::new(vec![iv(4, 7), iv(0, 3)], iv(0, 8)).unwrap();
        assert_eq!(gamma_permutation(&swapped), Permutation::from_images(vec![1, 0]));
    }

    #[test]
    fn invalid_operations_rejected() {
        assert!(matches!(
            IntervalOperation::new(vec![iv(0, 4), iv(3, 7)], iv(0, 8)),
            Err(OperadError::Overlap(..))
        ));
        assert!(matches!(
            IntervalOperation::new(vec![iv(0, 4)], iv(1, 8)),
            Err(OperadError::NotContained(..))
        ));
        assert!(matches!(
            IntervalOperation::new(vec![iv(0, 2)], iv(0, 8)),
            Err(OperadError::NotAColor(..))
        ));
    }

    #[test]
    fn sum_operation_examples() {
        let f = LatticeFunction::from_ints([(0, 1)]);
        let g = LatticeFunction::from_ints([(3, 2)]);
        let s = sum_operation_v(&[(f.clone(), iv(-2, 1)), (g, iv(2, 5))], &iv(-3, 6)).unwrap();
        assert_eq!(s, LatticeFunction::from_ints([(0, 1), (3, 2)]));
        assert_eq!(sum_operation_v(&[(f.clone(), iv(-2, 1))], &iv(-3, 6)).unwrap(), f);
        let s = sum_operation_v(&[(f.clone(), iv(-2, 1)), (LatticeFunction::zero(), iv(2, 5))], &iv(-3, 6))
            .unwrap();
        assert_eq!(s, f);
        assert!(sum_operation_v(&[(LatticeFunction::delta(4), iv(-2, 1))], &iv(-3, 6)).is_err());
    }

    #[test]
    fn factorization_product_examples() {
        let i1 = Interval::from_ratios((-2, 1), (1, 2)).unwrap();
        let i2 = Interval::from_ratios((1, 2), (3, 1)).unwrap();
        let x = Cochain::field(0);
        let y = &Cochain::field(2) - &Cochain::field(1);
        let p = factorization_product(&[(x.clone(), i1.clone()), (y, i2.clone())], &iv(-3, 3)).unwrap();
        assert_eq!(p, &(&x * &Cochain::field(2)) - &(&x * &Cochain::field(1)));
        assert_eq!(factorization_product(&[(x.clone(), i1.clone())], &iv(-3, 3)).unwrap(), x);
        let unit = factorization_product(&[(Cochain::one(), i1.clone()), (Cochain::one(), i2.clone())], &iv(-3, 3))
            .unwrap();
        assert_eq!(unit, Cochain::one());
        assert!(matches!(
            factorization_product(&[(Cochain::field(2), i1)], &iv(-3, 3)),
            Err(OperadError::SupportViolation { .. })
        ));
    }

    #[test]
    fn translate_and_reverse() {
        assert_eq!(translate(&Cochain::field(0), 1), Cochain::field(1));
        let c = &Cochain::antifield(2) * &Cochain::field(0);
        assert_eq!(translate(&c, -2), &Cochain::antifield(0) * &Cochain::field(-2));
        assert_eq!(translate(&c, 0), c);
        let d = &Cochain::field(2) - &Cochain::field(1);
        assert_eq!(time_reversal(&d), &Cochain::field(-2) - &Cochain::field(-1));
        // bdelta[1] bdelta[2] -> bdelta[-1] bdelta[-2] = -bdelta[-2] bdelta[-1]
        let e = &Cochain::antifield(1) * &Cochain::antifield(2);
        assert_eq!(time_reversal(&e), -(&Cochain::antifield(-2) * &Cochain::antifield(-1)));
        assert_eq!(time_reversal(&time_reversal(&e)), e);
    }

    #[test]
    fn symmetry_group_laws() {
        let t = Symmetry::translation(3);
        let r = Symmetry::reversal();
        assert_eq!(r.compose(r), Symmetry::identity());
        assert_eq!(t.compose(t.inverse()), Symmetry::identity());
        assert_eq!(r.compose(t).compose(r), Symmetry::translation(-3));
        let g = t.compose(r);
        assert_eq!(g.compose(g.inverse()), Symmetry::identity());
        assert_eq!(g.act_on_interval(&iv(0, 3)), iv(0, 3));
    }

    #[test]
    fn interval_parsing() {
        assert_eq!("-4,4".parse::<Interval>().unwrap(), iv(-4, 4));
        assert_eq!(
            "(-3/2, 4)".parse::<Interval>().unwrap(),
            Interval::from_ratios((-3, 2), (4, 1)).unwrap()
        );
        assert!("4,-4".parse::<Interval>().is_err());
        assert!("abc".parse::<Interval>().is_err());
        assert_eq!(Interval::from_ratios((-3, 2), (4, 1)).unwrap().to_string(), "(-3/2,4)");
    }
}
