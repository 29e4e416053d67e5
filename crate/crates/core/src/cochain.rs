//! Graded-commutative observables.
//!
//! A [`Monomial`] is a product of even field generators `delta[x]` (degree 0)
//! and odd antifield generators `bdelta[x]` (degree -1). Antifields are kept
//! in ascending site order; every reordering reports its Koszul sign.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};



use crate::operad::Interval;
use crate::scalars::{write_combination, Scalar};

/// A lattice point.
pub type Site = i64;

/// Sign of a permutation or a Koszul reordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn apply(self, s: Scalar) -> Scalar {
        match self {
            Sign::Plus => s,
            Sign::Minus => -s,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self != rhs)
    }
}

/// Counts inversions of `list` and sorts it; `None` if a site repeats.
fn sort_with_sign(list: &mut [Site]) -> Option<Sign> {
    let mut inversions = 0usize;
    for i in 0..list.len() {
        for j in (i + 1)..list.len() {
            match list[i].cmp(&list[j]) {
                std::cmp::Ordering::Greater => inversions += 1,
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    list.sort_unstable();
    Some(Sign::from_parity(inversions % 2 == 1))
}

/// Product of generators. `fields` is sorted by site with positive exponents;
/// `antifields` is strictly ascending.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    fields: Vec<(Site, u32)>,
    antifields: Vec<Site>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn field(site: Site) -> Self {
        Self::field_pow(site, 1)
    }

    pub fn field_pow(site: Site, exp: u32) -> Self {
        let fields = if exp == 0 { vec![] } else { vec![(site, exp)] };
        Self {
            fields,
            antifields: vec![],
        }
    }

    pub fn antifield(site: Site) -> Self {
        Self {
            fields: vec![],
            antifields: vec![site],
        }
    }

    /// Builds `bdelta[a_1]...bdelta[a_k] * prod delta[s]^e` from unordered parts.
    ///
    /// Returns the sign of the sorting permutation of the antifield list, or
    /// `None` when an antifield repeats (the monomial is zero).
    pub fn from_parts<F>(fields: F, antifields: &[Site]) -> Option<(Sign, Monomial)>
    where
        F: IntoIterator<Item = (Site, u32)>,
    {
        let mut anti = antifields.to_vec();
        let sign = sort_with_sign(&mut anti)?;
        let mut map: BTreeMap<Site, u32> = BTreeMap::new();
        for (s, e) in fields {
            if e > 0 {
                *map.entry(s).or_insert(0) += e;
            }
        }
        Some((
            sign,
            Monomial {
                fields: map.into_iter().collect(),
                antifields: anti,
            },
        ))
    }

    pub fn fields(&self) -> &[(Site, u32)] {
        &self.fields
    }

    pub fn antifields(&self) -> &[Site] {
        &self.antifields
    }

    pub fn is_one(&self) -> bool {
        self.fields.is_empty() && self.antifields.is_empty()
    }

    /// Cohomological degree: minus the number of antifields.
    pub fn degree(&self) -> i64 {
        -(self.antifields.len() as i64)
    }

    pub fn is_even(&self) -> bool {
        self.antifields.is_empty()
    }

    /// Polynomial degree, counting every generator.
    pub fn total_degree(&self) -> u32 {
        self.field_degree() + self.antifields.len() as u32
    }

    pub fn field_degree(&self) -> u32 {
        self.fields.iter().map(|&(_, e)| e).sum()
    }

    pub fn field_exponent(&self, site: Site) -> u32 {
        self.fields
            .binary_search_by_key(&site, |&(s, _)| s)
            .map(|i| self.fields[i].1)
            .unwrap_or(0)
    }

    pub fn antifield_position(&self, site: Site) -> Option<usize> {
        self.antifields.binary_search(&site).ok()
    }

    /// `self * delta[site]^exp`.
    pub fn with_field(&self, site: Site, exp: u32) -> Monomial {
        if exp == 0 {
            return self.clone();
        }
        let mut out = self.clone();
        match out.fields.binary_search_by_key(&site, |&(s, _)| s) {
            Ok(i) => out.fields[i].1 += exp,
            Err(i) => out.fields.insert(i, (site, exp)),
        }
        out
    }

    /// Divides out one factor `delta[site]`; `None` if absent.
    pub fn without_field(&self, site: Site) -> Option<Monomial> {
        let i = self.fields.binary_search_by_key(&site, |&(s, _)| s).ok()?;
        let mut out = self.clone();
        if out.fields[i].1 == 1 {
            out.fields.remove(i);
        } else {
            out.fields[i].1 -= 1;
        }
        Some(out)
    }

    /// Deletes the antifield at `position` (no sign applied).
    pub fn without_antifield_at(&self, position: usize) -> Monomial {
        let mut out = self.clone();
        out.antifields.remove(position);
        out
    }

    /// Product with Koszul sign; `None` if an antifield repeats.
    pub fn mul(&self, other: &Monomial) -> Option<(Sign, Monomial)> {
        let mut inversions = 0usize;
        for a in &self.antifields {
            for b in &other.antifields {
                if a == b {
                    return None;
                }
                if a > b {
                    inversions += 1;
                }
            }
        }
        let mut antifields = Vec::with_capacity(self.antifields.len() + other.antifields.len());
        antifields.extend_from_slice(&self.antifields);
        antifields.extend_from_slice(&other.antifields);
        antifields.sort_unstable();
        let mut out = Monomial {
            fields: self.fields.clone(),
            antifields,
        };
        for &(s, e) in &other.fields {
            out = out.with_field(s, e);
        }
        Some((Sign::from_parity(inversions % 2 == 1), out))
    }

    /// Applies a site map. The antifield list is re-sorted with its sign;
    /// `None` if the map identifies two antifield sites.
    pub fn map_sites(&self, f: impl Fn(Site) -> Site) -> Option<(Sign, Monomial)> {
        let anti: Vec<Site> = self.antifields.iter().map(|&s| f(s)).collect();
        Monomial::from_parts(self.fields.iter().map(|&(s, e)| (f(s), e)), &anti)
    }

    pub fn sites(&self) -> impl Iterator<Item = Site> + '_ {
        self.fields
            .iter()
            .map(|&(s, _)| s)
            .chain(self.antifields.iter().copied())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for s in &self.antifields {
            if !first {
                write!(f, "*")?;
            }
            write!(f, "bdelta[{s}]")?;
            first = false;
        }
        for &(s, e) in &self.fields {
            if !first {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "delta[{s}]")?;
            } else {
                write!(f, "delta[{s}]^{e}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Finite linear combination of monomials with [`Scalar`] coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Cochain {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Cochain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_term(Monomial::one(), c)
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::from_term(m, Scalar::one())
    }

    pub fn from_term(m: Monomial, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    /// `delta[site]`.
    pub fn field(site: Site) -> Self {
        Self::from_monomial(Monomial::field(site))
    }

    /// `bdelta[site]`.
    pub fn antifield(site: Site) -> Self {
        Self::from_monomial(Monomial::antifield(site))
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The constant term, i.e. the coefficient of the empty monomial.
    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Union of all sites that appear in some monomial.
    pub fn support(&self) -> BTreeSet<Site> {
        self.terms.keys().flat_map(|m| m.sites()).collect()
    }

    pub fn field_sites(&self) -> BTreeSet<Site> {
        self.terms
            .keys()
            .flat_map(|m| m.fields().iter().map(|&(s, _)| s))
            .collect()
    }

    pub fn antifield_sites(&self) -> BTreeSet<Site> {
        self.terms
            .keys()
            .flat_map(|m| m.antifields().iter().copied())
            .collect()
    }

    /// Component of cohomological degree `k`.
    pub fn homogeneous(&self, k: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// True when every monomial is a product of field generators only.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(Monomial::is_even)
    }

    /// Common degree of all terms, or `None` if mixed (zero has degree 0).
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next().unwrap_or(0);
        it.all(|d| d == first).then_some(first)
    }

    pub fn max_total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    /// Applies a coefficient map, dropping terms that become zero.
    pub fn map_coefficients<E>(&self, f: impl Fn(&Scalar) -> Result<Scalar, E>) -> Result<Self, E> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Applies a site map to every generator, with Koszul signs from re-sorting.
    pub fn map_sites(&self, f: impl Fn(Site) -> Site) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some((sign, m2)) = m.map_sites(&f) {
                out.add_term(m2, sign.apply(c.clone()));
            }
        }
        out
    }

    /// Even derivation `d/d delta[site]`.
    pub fn partial_field(&self, site: Site) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.field_exponent(site);
            if e > 0 {
                let m2 = m.without_field(site).unwrap();
                out.add_term(m2, c * &Scalar::from_int(e as i64));
            }
        }
        out
    }

    /// Odd left derivative `d/d bdelta[site]`: deleting the antifield in
    /// (zero-based) position `i` carries the sign `(-1)^i`.
    pub fn partial_antifield(&self, site: Site) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some(i) = m.antifield_position(site) {
                let sign = Sign::from_parity(i % 2 == 1);
                out.add_term(m.without_antifield_at(i), sign.apply(c.clone()));
            }
        }
        out
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.terms.iter().map(|(m, c)| {
            let label = if m.is_one() { String::new() } else { m.to_string() };
            (label, c)
        });
        write_combination(f, labels)
    }
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain({self})")
    }
}

impl From<Scalar> for Cochain {
    fn from(c: Scalar) -> Self {
        Cochain::constant(c)
    }
}

impl From<Monomial> for Cochain {
    fn from(m: Monomial) -> Self {
        Cochain::from_monomial(m)
    }
}

impl<'a> AddAssign<&'a Cochain> for Cochain {
    fn add_assign(&mut self, rhs: &'a Cochain) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<'a> SubAssign<&'a Cochain> for Cochain {
    fn sub_assign(&mut self, rhs: &'a Cochain) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl<'a> Add<&'a Cochain> for &Cochain {
    type Output = Cochain;
    fn add(self, rhs: &'a Cochain) -> Cochain {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Cochain {
    type Output = Cochain;
    fn add(mut self, rhs: Cochain) -> Cochain {
        self += &rhs;
        self
    }
}

impl<'a> Sub<&'a Cochain> for &Cochain {
    type Output = Cochain;
    fn sub(self, rhs: &'a Cochain) -> Cochain {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Cochain {
    type Output = Cochain;
    fn sub(mut self, rhs: Cochain) -> Cochain {
        self -= &rhs;
        self
    }
}

impl Neg for &Cochain {
    type Output = Cochain;
    fn neg(self) -> Cochain {
        self.scale(&-Scalar::one())
    }
}

impl Neg for Cochain {
    type Output = Cochain;
    fn neg(self) -> Cochain {
        -&self
    }
}

impl<'a> Mul<&'a Cochain> for &Cochain {
    type Output = Cochain;
    fn mul(self, rhs: &'a Cochain) -> Cochain {
        let mut out = Cochain::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                if let Some((sign, m)) = m1.mul(m2) {
                    out.add_term(m, sign.apply(c1 * c2));
                }
            }
        }
        out
    }
}

impl Mul for Cochain {
    type Output = Cochain;
    fn mul(self, rhs: Cochain) -> Cochain {
        &self * &rhs
    }
}

/// Graded-commutative product.
pub fn multiply(x: &Cochain, y: &Cochain) -> Cochain {
    x * y
}

/// True iff every field site lies in `Z ∩ (a, b)` and every antifield site in
/// `Z ∩ (a+1, b-1)`.
pub fn support_within(c: &Cochain, interval: &Interval) -> bool {
    c.terms().all(|(m, _)| {
        m.fields()
            .iter()
            .all(|&(s, _)| interval.contains_field_site(s))
            && m.antifields()
                .iter()
                .all(|&s| interval.contains_antifield_site(s))
    })
}

/// Finitely supported function `Z -> Scalar`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LatticeFunction {
    values: BTreeMap<Site, Scalar>,
}

impl LatticeFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Indicator of a single site.
    pub fn delta(site: Site) -> Self {
        Self::from_pairs([(site, Scalar::one())])
    }

    pub fn from_pairs<I: IntoIterator<Item = (Site, Scalar)>>(pairs: I) -> Self {
        let mut out = Self::zero();
        for (s, v) in pairs {
            out.add_at(s, &v);
        }
        out
    }

    pub fn from_ints<I: IntoIterator<Item = (Site, i64)>>(pairs: I) -> Self {
        Self::from_pairs(pairs.into_iter().map(|(s, v)| (s, Scalar::from_int(v))))
    }

    pub fn add_at(&mut self, site: Site, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        let entry = self.values.entry(site).or_default();
        *entry += v;
        if entry.is_zero() {
            self.values.remove(&site);
        }
    }

    pub fn get(&self, site: Site) -> Scalar {
        self.values.get(&site).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Site, &Scalar)> {
        self.values.iter().map(|(s, v)| (*s, v))
    }

    pub fn support(&self) -> BTreeSet<Site> {
        self.values.keys().copied().collect()
    }

    /// Smallest and largest site of the support.
    pub fn support_bounds(&self) -> Option<(Site, Site)> {
        let lo = *self.values.keys().next()?;
        let hi = *self.values.keys().next_back()?;
        Some((lo, hi))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_pairs(self.values.iter().map(|(s, v)| (*s, v * c)))
    }

    /// `sum_x f(x) delta[x]`, a degree-0 cochain.
    pub fn to_field_cochain(&self) -> Cochain {
        let mut out = Cochain::zero();
        for (s, v) in &self.values {
            out.add_term(Monomial::field(*s), v.clone());
        }
        out
    }

    /// `sum_x f(x) bdelta[x]`, the suspension as a degree -1 cochain.
    pub fn to_antifield_cochain(&self) -> Cochain {
        let mut out = Cochain::zero();
        for (s, v) in &self.values {
            out.add_term(Monomial::antifield(*s), v.clone());
        }
        out
    }

    /// Inverse of [`Self::to_field_cochain`] / [`Self::to_antifield_cochain`];
    /// `None` unless every monomial is a single generator of one kind.
    pub fn from_linear_cochain(c: &Cochain) -> Option<Self> {
        let mut out = Self::zero();
        let mut kind: Option<bool> = None;
        for (m, v) in c.terms() {
            let (site, is_field) = match (m.fields(), m.antifields()) {
                ([(s, 1)], []) => (*s, true),
                ([], [s]) => (*s, false),
                _ => return None,
            };
            if kind.is_some_and(|k| k != is_field) {
                return None;
            }
            kind = Some(is_field);
            out.add_at(site, v);
        }
        Some(out)
    }
}

impl<'a> Add<&'a LatticeFunction> for &LatticeFunction {
    type Output = LatticeFunction;
    fn add(self, rhs: &'a LatticeFunction) -> LatticeFunction {
        let mut out = self.clone();
        for (s, v) in rhs.iter() {
            out.add_at(s, v);
        }
        out
    }
}

impl<'a> Sub<&'a LatticeFunction> for &LatticeFunction {
    type Output = LatticeFunction;
    fn sub(self, rhs: &'a LatticeFunction) -> LatticeFunction {
        let mut out = self.clone();
        for (s, v) in rhs.iter() {
            out.add_at(s, &-v);
        }
        out
    }
}

impl fmt::Debug for LatticeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.values.iter()).finish()
    }
}

/// The degree-1 pairing `<<f, g>> = sum_x f(x) g(x)`.
pub fn pairing(f: &LatticeFunction, g: &LatticeFunction) -> Scalar {
    let mut acc = Scalar::zero();
    for (s, v) in f.iter() {
        if let Some(w) = g.values.get(&s) {
            acc += &(v * w);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: Site) -> Cochain {
        Cochain::field(s)
    }

    fn bd(s: Site) -> Cochain {
        Cochain::antifield(s)
    }

    #[test]
    fn odd_generators_anticommute() {
        assert_eq!(&bd(1) * &bd(0), -(&bd(0) * &bd(1)));
        assert!((&bd(0) * &bd(0)).is_zero());
    }

    #[test]
    fn even_bilinearity() {
        let lhs = &(&d(0) + &d(1)) * &d(0);
        assert_eq!(lhs, &d(0).pow(2) + &(&d(0) * &d(1)));
    }

    #[test]
    fn partial_field_examples() {
        assert_eq!(d(0).pow(3).partial_field(0), d(0).pow(2).scale(&Scalar::from_int(3)));
        assert!(d(0).pow(2).partial_field(1).is_zero());
        let c = &(&bd(2) * &d(0)) * &d(1);
        assert_eq!(c.partial_field(0), &bd(2) * &d(1));
    }

    #[test]
    fn partial_antifield_examples() {
        assert_eq!((&bd(0) * &d(5)).partial_antifield(0), d(5));
        assert_eq!((&bd(0) * &bd(1)).partial_antifield(1), -bd(0));
        assert!((&bd(0) * &bd(1)).partial_antifield(3).is_zero());
        // cross-check: bdelta[0] bdelta[1] = -bdelta[1] bdelta[0], derivative of the front factor
        assert_eq!((-(&bd(1) * &bd(0))).partial_antifield(1), -bd(0));
    }

    #[test]
    fn from_parts_reports_sorting_sign() {
        let (s, m) = Monomial::from_parts([], &[2, 0, 1]).unwrap();
        assert_eq!(s, Sign::Plus);
        assert_eq!(m.antifields(), &[0, 1, 2]);
        let (s, _) = Monomial::from_parts([], &[1, 0]).unwrap();
        assert_eq!(s, Sign::Minus);
        assert!(Monomial::from_parts([], &[3, 3]).is_none());
    }

    #[test]
    fn degree_tracking() {
        let c = &(&bd(0) * &bd(1)) * &d(2);
        assert_eq!(c.degree(), Some(-2));
        assert_eq!((&c + &d(0)).degree(), None);
        assert_eq!((&c + &d(0)).homogeneous(0), d(0));
    }

    #[test]
    fn pairing_examples() {
        let one = LatticeFunction::delta(0);
        assert!(pairing(&one, &one).is_one());
        assert!(pairing(&one, &LatticeFunction::delta(1)).is_zero());
        let s = Scalar::alpha_sum();
        let f = LatticeFunction::from_pairs([
            (-2, s.clone()),
            (-1, Scalar::one()),
            (1, -Scalar::one()),
            (2, -s),
        ]);
        let g = LatticeFunction::from_ints([(1, 1), (-1, -1)]);
        assert_eq!(pairing(&f, &g), Scalar::from_int(-2));
    }

    #[test]
    fn support_within_examples() {
        let i = Interval::from_ints(0, 5).unwrap();
        assert!(support_within(&(&d(1) * &d(2)), &i));
        assert!(!support_within(&bd(1), &i));
        assert!(support_within(&bd(2), &i));
        assert!(!support_within(&d(0), &i));
    }

    #[test]
    fn linear_cochain_round_trip() {
        let f = LatticeFunction::from_ints([(0, 2), (3, -1)]);
        assert_eq!(LatticeFunction::from_linear_cochain(&f.to_field_cochain()), Some(f.clone()));
        assert_eq!(LatticeFunction::from_linear_cochain(&f.to_antifield_cochain()), Some(f));
        assert_eq!(LatticeFunction::from_linear_cochain(&(&d(0) + &bd(1))), None);
    }

    #[test]
    fn rendering() {
        let c = &(&d(0) * &d(1)).scale(&Scalar::from_int(3)) - &bd(2).scale(&Scalar::from_int(2)).scale(&Scalar::hbar());
        assert_eq!(c.to_string(), "-2*hbar*bdelta[2] + 3*delta[0]*delta[1]");
        let e = d(0).scale(&Scalar::alpha_sum());
        assert_eq!(e.to_string(), "(alpha + alpha^-1)*delta[0]");
        assert_eq!(Cochain::constant(Scalar::hbar()).to_string(), "hbar");
    }
}
