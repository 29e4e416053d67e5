//! The associative algebra of degree-0 classes and its Weyl presentation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use thiserror::Error;

use crate::cochain::{support_within, Cochain, Monomial};
use crate::complex::ModelParams;
use crate::operad::{factorization_product, half, time_reversal, translate, Interval, OperadError};
use crate::reduction::{
    verify_certificate, HomotopyCertificate, Reducer, ReductionError, Strategy, Window,
};
use crate::scalars::{write_combination, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Operad(#[from] OperadError),
    #[error("classes were built with different model parameters")]
    ParamsMismatch,
    #[error("invalid star geometry: {0}")]
    Geometry(String),
    #[error("{0} is not a canonical form in the window {{0,1}}")]
    NotCanonical(String),
    #[error("degree {degree} exceeds the bound {bound}")]
    DegreeBound { degree: u32, bound: u32 },
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

/// Normal-ordered element `sum c[a,b] q^a p^b` with `p q - q p = hbar`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct WeylElement {
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl WeylElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    pub fn q() -> Self {
        Self::monomial(1, 0)
    }

    pub fn p() -> Self {
        Self::monomial(0, 1)
    }

    /// `q^a p^b`.
    pub fn monomial(a: u32, b: u32) -> Self {
        Self::from_terms([((a, b), Scalar::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Scalar)>>(terms: I) -> Self {
        let mut w = Self::zero();
        for (k, c) in terms {
            w.add_term(k, c);
        }
        w
    }

    pub fn add_term(&mut self, key: (u32, u32), c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, a: u32, b: u32) -> Scalar {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
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

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|&(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn is_alpha_free(&self) -> bool {
        self.terms.values().all(Scalar::is_alpha_free)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(&k, v)| (k, v * c)))
    }

    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(&k, v)| (k, f(v))))
    }

    /// Product with commutator `[p, q] = hbar` for the given `hbar`.
    pub fn mul_with(&self, other: &WeylElement, hbar: &Scalar) -> WeylElement {
        let mut out = WeylElement::zero();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &other.terms {
                let xy = x * y;
                for k in 0..=b.min(c) {
                    let n = binomial(b, k) * binomial(c, k) * factorial(k);
                    let coef = &(&xy * &Scalar::from_int(n)) * &hbar.pow(k);
                    out.add_term((a + c - k, b + d - k), coef);
                }
            }
        }
        out
    }

    pub fn pow_with(&self, n: u32, hbar: &Scalar) -> WeylElement {
        (0..n).fold(WeylElement::one(), |acc, _| acc.mul_with(self, hbar))
    }

    pub fn pow(&self, n: u32) -> WeylElement {
        self.pow_with(n, &Scalar::hbar())
    }
}

/// Normal-ordered product with symbolic `hbar`.
pub fn weyl_mul(x: &WeylElement, y: &WeylElement) -> WeylElement {
    x.mul_with(y, &Scalar::hbar())
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by_key(|(x, _)| std::cmp::Reverse((x.0 + x.1, x.0)));
        let labels = keys.into_iter().map(|(&(a, b), c)| {
            let mut parts = Vec::new();
            match a {
                0 => {}
                1 => parts.push("q".to_string()),
                _ => parts.push(format!("q^{a}")),
            }
            match b {
                0 => {}
                1 => parts.push("p".to_string()),
                _ => parts.push(format!("p^{b}")),
            }
            (parts.join("*"), c)
        });
        write_combination(f, labels)
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement({self})")
    }
}

impl AddAssign<&WeylElement> for WeylElement {
    fn add_assign(&mut self, rhs: &WeylElement) {
        for (&k, c) in &rhs.terms {
            self.add_term(k, c.clone());
        }
    }
}

impl SubAssign<&WeylElement> for WeylElement {
    fn sub_assign(&mut self, rhs: &WeylElement) {
        for (&k, c) in &rhs.terms {
            self.add_term(k, -c.clone());
        }
    }
}

impl Add for &WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &WeylElement) -> WeylElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &WeylElement) -> WeylElement {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        self.scale(&-Scalar::one())
    }
}

impl Mul for &WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        weyl_mul(self, rhs)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for WeylElement {
            type Output = WeylElement;
            fn $m(self, rhs: WeylElement) -> WeylElement {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        -&self
    }
}

/// Generator images of the unit translation:
/// `q -> (c/2) q + p`, `p -> ((c^2 - 4)/4) q + (c/2) p` with `c = alpha + alpha^-1`.
pub fn time_evolution_generators(p: &ModelParams) -> (WeylElement, WeylElement) {
    let c = p.alpha_sum();
    let c2 = c.scale(&half(1));
    let off = (&c.pow(2) - &Scalar::from_int(4)).scale(&BigRational::new(1.into(), 4.into()));
    let tq = WeylElement::from_terms([((1, 0), c2.clone()), ((0, 1), Scalar::one())]);
    let tp = WeylElement::from_terms([((1, 0), off), ((0, 1), c2)]);
    (tq, tp)
}

/// The algebra automorphism induced by translating every site by one.
pub fn time_evolution(w: &WeylElement, p: &ModelParams) -> WeylElement {
    let (tq, tp) = time_evolution_generators(p);
    let h = p.hbar();
    let mut out = WeylElement::zero();
    for (&(a, b), c) in w.terms() {
        out += &tq.pow_with(a, h).mul_with(&tp.pow_with(b, h), h).scale(c);
    }
    out
}

/// Anti-involution `q -> q`, `p -> -p`, for the given `hbar`.
pub fn time_reversal_weyl_with(w: &WeylElement, hbar: &Scalar) -> WeylElement {
    let mut out = WeylElement::zero();
    for (&(a, b), c) in w.terms() {
        // q^a p^b -> (-p)^b q^a
        let sign = if b % 2 == 0 { c.clone() } else { -c.clone() };
        out += &WeylElement::monomial(0, b)
            .mul_with(&WeylElement::monomial(a, 0), hbar)
            .scale(&sign);
    }
    out
}

pub fn time_reversal_weyl(w: &WeylElement) -> WeylElement {
    time_reversal_weyl_with(w, &Scalar::hbar())
}

/// Element of `K[q]`, identified with `Weyl / Weyl p`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FockVector {
    coeffs: BTreeMap<u32, Scalar>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The cyclic vector `1`.
    pub fn vacuum() -> Self {
        Self::q_power(0)
    }

    pub fn q_power(n: u32) -> Self {
        Self::from_terms([(n, Scalar::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, Scalar)>>(terms: I) -> Self {
        let mut v = Self::zero();
        for (n, c) in terms {
            v.add_term(n, c);
        }
        v
    }

    pub fn add_term(&mut self, n: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(n).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    pub fn coefficient(&self, n: u32) -> Scalar {
        self.coeffs.get(&n).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(&n, v)| (n, v * c)))
    }

    pub fn to_weyl(&self) -> WeylElement {
        WeylElement::from_terms(self.coeffs.iter().map(|(&n, c)| ((n, 0), c.clone())))
    }
}

impl Add for &FockVector {
    type Output = FockVector;
    fn add(self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (&n, c) in &rhs.coeffs {
            out.add_term(n, c.clone());
        }
        out
    }
}

impl Sub for &FockVector {
    type Output = FockVector;
    fn sub(self, rhs: &FockVector) -> FockVector {
        self + &rhs.scale(&-Scalar::one())
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.coeffs.iter().rev().map(|(&n, c)| {
            let label = match n {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{n}"),
            };
            (label, c)
        });
        write_combination(f, labels)
    }
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FockVector({self})")
    }
}

/// Image of a normal-ordered element in `Weyl / Weyl p`: every term with a
/// positive `p` power lies in the left ideal.
pub fn coinvariant_projection(w: &WeylElement) -> FockVector {
    FockVector::from_terms(
        w.terms()
            .filter(|((_, b), _)| *b == 0)
            .map(|(&(a, _), c)| (a, c.clone())),
    )
}

/// Whether `w` lies in the left ideal `Weyl p`.
pub fn in_left_ideal_of_p(w: &WeylElement) -> bool {
    coinvariant_projection(w).is_zero()
}

/// Generators `x - tau(x)` for `x` in `{q, p}`: `0` and `2p`.
pub fn coinvariant_generators() -> [WeylElement; 2] {
    let tau = time_reversal_weyl;
    let q = WeylElement::q();
    let p = WeylElement::p();
    [&q - &tau(&q), &p - &tau(&p)]
}

/// Left action on `K[q] = Weyl / Weyl p`: `q . q^n = q^(n+1)`,
/// `p . q^n = n hbar q^(n-1)`.
pub fn fock_action_with(w: &WeylElement, v: &FockVector, hbar: &Scalar) -> FockVector {
    coinvariant_projection(&w.mul_with(&v.to_weyl(), hbar))
}

pub fn fock_action(w: &WeylElement, v: &FockVector) -> FockVector {
    fock_action_with(w, v, &Scalar::hbar())
}

/// A degree-0 class `[representative]` of the observables on `ambient`,
/// carrying its canonical form in the window `{0,1}`. The certificate is
/// built on first request.
#[derive(Clone, Debug)]
pub struct H0Class {
    representative: Cochain,
    ambient: Interval,
    params: ModelParams,
    canonical: Cochain,
    certificate: Arc<OnceLock<HomotopyCertificate>>,
}

impl H0Class {
    pub fn new(representative: Cochain, ambient: Interval, params: &ModelParams) -> Result<Self, WeylError> {
        let mut reducer = Reducer::new(ambient.clone(), Window::new(0), params.clone(), Strategy::default())?;
        let cert = reducer.reduce(&representative)?;
        Ok(Self::from_certificate(ambient, params.clone(), cert))
    }

    fn from_certificate(ambient: Interval, params: ModelParams, cert: HomotopyCertificate) -> Self {
        Self {
            representative: cert.input.clone(),
            canonical: cert.normal_form.clone(),
            ambient,
            params,
            certificate: Arc::new(OnceLock::from(cert)),
        }
    }

    /// Caller guarantees that `canonical` is the normal form of `representative`.
    fn from_parts(representative: Cochain, canonical: Cochain, ambient: Interval, params: ModelParams) -> Self {
        Self {
            representative,
            canonical,
            ambient,
            params,
            certificate: Arc::new(OnceLock::new()),
        }
    }

    pub fn representative(&self) -> &Cochain {
        &self.representative
    }

    pub fn ambient(&self) -> &Interval {
        &self.ambient
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// Canonical form: a polynomial in `delta[0]`, `delta[1]`.
    pub fn canonical(&self) -> &Cochain {
        &self.canonical
    }

    /// `representative = canonical + d_hbar(homotopy)`.
    pub fn certificate(&self) -> &HomotopyCertificate {
        self.certificate.get_or_init(|| {
            let mut reducer = Reducer::new(self.ambient.clone(), Window::new(0), self.params.clone(), Strategy::default())
                .expect("window fits the ambient interval");
            let cert = reducer.reduce(&self.representative).expect("representative was reduced before");
            debug_assert_eq!(cert.normal_form, self.canonical);
            cert
        })
    }

    pub fn verify(&self) -> bool {
        self.certificate().normal_form == self.canonical && verify_certificate(self.certificate(), &self.params)
    }

    pub fn same_class(&self, other: &H0Class) -> bool {
        self.params == other.params && self.canonical() == other.canonical()
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().is_zero()
    }

    fn combine(&self, other: &H0Class, sign: i64) -> Result<H0Class, WeylError> {
        if self.params != other.params {
            return Err(WeylError::ParamsMismatch);
        }
        let s = Scalar::from_int(sign);
        Ok(Self::from_parts(
            &self.representative + &other.representative.scale(&s),
            &self.canonical + &other.canonical.scale(&s),
            self.ambient.hull(&other.ambient),
            self.params.clone(),
        ))
    }

    pub fn add(&self, other: &H0Class) -> Result<H0Class, WeylError> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &H0Class) -> Result<H0Class, WeylError> {
        self.combine(other, -1)
    }

    pub fn scale(&self, c: &Scalar) -> H0Class {
        Self::from_parts(
            self.representative.scale(c),
            self.canonical.scale(c),
            self.ambient.clone(),
            self.params.clone(),
        )
    }

    /// Class of the translated representative, by `n` sites.
    pub fn translate(&self, n: i64) -> Result<H0Class, WeylError> {
        let rep = translate(self.canonical(), n);
        let ambient = self.ambient.hull(&self.ambient.translate(n));
        H0Class::new(rep, ambient, &self.params)
    }

    /// Class of the reflected representative `x -> -x`.
    pub fn time_reversal(&self) -> Result<H0Class, WeylError> {
        let rep = time_reversal(self.canonical());
        let ambient = self.ambient.hull(&self.ambient.reverse());
        H0Class::new(rep, ambient, &self.params)
    }
}

impl PartialEq for H0Class {
    fn eq(&self, other: &Self) -> bool {
        self.same_class(other)
    }
}

impl fmt::Display for H0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.canonical())
    }
}

/// Where the two factors of a star product are placed: `i1 < i2` inside `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarGeometry {
    j: Interval,
    i1: Interval,
    i2: Interval,
}

fn closest_window(i: &Interval) -> Result<Window, WeylError> {
    let sites = i.field_sites();
    let (lo, hi) = (*sites.start(), *sites.end());
    if hi <= lo {
        return Err(WeylError::Geometry(format!("{i} has fewer than two field sites")));
    }
    Ok(Window::new(0.clamp(lo, hi - 1)))
}

impl StarGeometry {
    pub fn new(j: Interval, i1: Interval, i2: Interval) -> Result<Self, WeylError> {
        crate::operad::IntervalOperation::new(vec![i1.clone(), i2.clone()], j.clone())?;
        if !i1.precedes(&i2) {
            return Err(WeylError::Geometry(format!("{i1} must lie left of {i2}")));
        }
        let g = Self { j, i1, i2 };
        if !Window::new(0).fits(&g.j) {
            return Err(WeylError::Geometry(format!("{} does not contain the window {{0,1}}", g.j)));
        }
        closest_window(&g.i1)?;
        closest_window(&g.i2)?;
        Ok(g)
    }

    /// `J = (-4,4)`, `I1 = (-4,-3/2)`, `I2 = (-3/2,4)`.
    pub fn default_geometry() -> Self {
        let r = BigRational::from_integer;
        Self::new(
            Interval::new(r((-4).into()), r(4.into())).unwrap(),
            Interval::new(r((-4).into()), half(-3)).unwrap(),
            Interval::new(half(-3), r(4.into())).unwrap(),
        )
        .unwrap()
    }

    /// `J = (-3,3)`, `I1 = (-2,1/2)`, `I2 = (1/2,3)`.
    pub fn massless35() -> Self {
        let r = BigRational::from_integer;
        Self::new(
            Interval::new(r((-3).into()), r(3.into())).unwrap(),
            Interval::new(r((-2).into()), half(1)).unwrap(),
            Interval::new(half(1), r(3.into())).unwrap(),
        )
        .unwrap()
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "default" => Some(Self::default_geometry()),
            "massless35" => Some(Self::massless35()),
            _ => None,
        }
    }

    pub fn ambient(&self) -> &Interval {
        &self.j
    }

    pub fn left(&self) -> &Interval {
        &self.i1
    }

    pub fn right(&self) -> &Interval {
        &self.i2
    }

    pub fn left_window(&self) -> Window {
        closest_window(&self.i1).unwrap()
    }

    pub fn right_window(&self) -> Window {
        closest_window(&self.i2).unwrap()
    }
}

impl Default for StarGeometry {
    fn default() -> Self {
        Self::default_geometry()
    }
}

/// Intermediate data of one star product.
#[derive(Clone, Debug)]
pub struct StarTrace {
    pub left: HomotopyCertificate,
    pub right: HomotopyCertificate,
    pub product: Cochain,
    pub reduction: HomotopyCertificate,
}

impl StarTrace {
    pub fn verify(&self, p: &ModelParams) -> bool {
        verify_certificate(&self.left, p)
            && verify_certificate(&self.right, p)
            && verify_certificate(&self.reduction, p)
            && self.product == &self.left.normal_form * &self.right.normal_form
    }
}

/// Star product engine for one model and geometry. Reductions are memoized
/// across calls, as are the canonical forms of `Psi(q^a p^b)`.
pub struct StarAlgebra {
    params: ModelParams,
    geometry: StarGeometry,
    to_left: Reducer,
    to_right: Reducer,
    to_canonical: Reducer,
    psi: HashMap<(u32, u32), Cochain>,
    pairs: HashMap<(Monomial, Monomial), Cochain>,
    degree_bound: u32,
}

/// Largest total degree `class_to_weyl` accepts by default.
pub const DEFAULT_DEGREE_BOUND: u32 = 12;

impl StarAlgebra {
    pub fn new(params: ModelParams, geometry: StarGeometry) -> Result<Self, WeylError> {
        let j = geometry.ambient().clone();
        let to_left = Reducer::new(j.clone(), geometry.left_window(), params.clone(), Strategy::default())?;
        let to_right = Reducer::new(j.clone(), geometry.right_window(), params.clone(), Strategy::default())?;
        let to_canonical = Reducer::new(j, Window::new(0), params.clone(), Strategy::default())?;
        Ok(Self {
            params,
            geometry,
            to_left,
            to_right,
            to_canonical,
            psi: HashMap::new(),
            pairs: HashMap::new(),
            degree_bound: DEFAULT_DEGREE_BOUND,
        })
    }

    pub fn with_degree_bound(mut self, bound: u32) -> Self {
        self.degree_bound = bound;
        self
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn geometry(&self) -> &StarGeometry {
        &self.geometry
    }

    /// Class of `c`, reduced inside the star ambient interval.
    pub fn class(&mut self, c: &Cochain) -> Result<H0Class, WeylError> {
        let nf = self.to_canonical.reduce_normal_form(c)?;
        Ok(H0Class::from_parts(c.clone(), nf, self.geometry.ambient().clone(), self.params.clone()))
    }

    /// `[delta[0]]`.
    pub fn q_class(&mut self) -> H0Class {
        self.class(&Cochain::field(0)).expect("window site")
    }

    /// `1/2 [delta[1] - delta[-1]]`.
    pub fn p_class(&mut self) -> H0Class {
        let c = (&Cochain::field(1) - &Cochain::field(-1)).scale(&Scalar::from_ratio(1, 2));
        self.class(&c).expect("sites inside the default ambient")
    }

    pub fn unit(&mut self) -> H0Class {
        self.class(&Cochain::one()).unwrap()
    }

    fn check(&self, x: &H0Class) -> Result<(), WeylError> {
        if x.params() != &self.params {
            return Err(WeylError::ParamsMismatch);
        }
        Ok(())
    }

    pub fn star_traced(&mut self, x: &H0Class, y: &H0Class) -> Result<StarTrace, WeylError> {
        self.check(x)?;
        self.check(y)?;
        let left = self.to_left.reduce(x.canonical())?;
        let right = self.to_right.reduce(y.canonical())?;
        debug_assert!(support_within(&left.normal_form, self.geometry.left()));
        let product = factorization_product(
            &[
                (left.normal_form.clone(), self.geometry.left().clone()),
                (right.normal_form.clone(), self.geometry.right().clone()),
            ],
            self.geometry.ambient(),
        )?;
        let reduction = self.to_canonical.reduce(&product)?;
        Ok(StarTrace {
            left,
            right,
            product,
            reduction,
        })
    }

    /// Same class as the product in [`StarAlgebra::star_traced`], without
    /// building certificates. The canonical form is assembled bilinearly from
    /// memoized products of canonical monomials.
    pub fn star(&mut self, x: &H0Class, y: &H0Class) -> Result<H0Class, WeylError> {
        self.check(x)?;
        self.check(y)?;
        let left = self.to_left.reduce_normal_form(x.canonical())?;
        let right = self.to_right.reduce_normal_form(y.canonical())?;
        let product = factorization_product(
            &[(left, self.geometry.left().clone()), (right, self.geometry.right().clone())],
            self.geometry.ambient(),
        )?;
        let mut nf = Cochain::zero();
        for (m1, c1) in x.canonical().terms() {
            for (m2, c2) in y.canonical().terms() {
                let c = c1 * c2;
                nf += &self.monomial_star(m1, m2)?.scale(&c);
            }
        }
        Ok(H0Class::from_parts(product, nf, self.geometry.ambient().clone(), self.params.clone()))
    }

    fn monomial_star(&mut self, m1: &Monomial, m2: &Monomial) -> Result<&Cochain, WeylError> {
        let key = (m1.clone(), m2.clone());
        if !self.pairs.contains_key(&key) {
            let left = self.to_left.reduce_normal_form(&Cochain::from_monomial(m1.clone()))?;
            let right = self.to_right.reduce_normal_form(&Cochain::from_monomial(m2.clone()))?;
            let product = factorization_product(
                &[(left, self.geometry.left().clone()), (right, self.geometry.right().clone())],
                self.geometry.ambient(),
            )?;
            let nf = self.to_canonical.reduce_normal_form(&product)?;
            self.pairs.insert(key.clone(), nf);
        }
        Ok(&self.pairs[&key])
    }

    /// Canonical form of `Psi(q^a p^b) = q^{*a} * p^{*b}`.
    pub fn psi_canonical(&mut self, a: u32, b: u32) -> Result<Cochain, WeylError> {
        if let Some(c) = self.psi.get(&(a, b)) {
            return Ok(c.clone());
        }
        let c = if a == 0 && b == 0 {
            Cochain::one()
        } else if a == 0 {
            let prev = self.psi_class(0, b - 1)?;
            let p = self.p_class();
            self.star(&prev, &p)?.canonical().clone()
        } else {
            let q = self.q_class();
            let rest = self.psi_class(a - 1, b)?;
            self.star(&q, &rest)?.canonical().clone()
        };
        self.psi.insert((a, b), c.clone());
        Ok(c)
    }

    fn psi_class(&mut self, a: u32, b: u32) -> Result<H0Class, WeylError> {
        let c = self.psi_canonical(a, b)?;
        self.class(&c)
    }

    pub fn weyl_to_class(&mut self, w: &WeylElement) -> Result<H0Class, WeylError> {
        let mut acc = Cochain::zero();
        for (&(a, b), c) in w.terms() {
            acc += &self.psi_canonical(a, b)?.scale(c);
        }
        self.class(&acc)
    }

    /// Expresses a class in the basis `Psi(q^a p^b)`.
    pub fn class_to_weyl(&mut self, x: &H0Class) -> Result<WeylElement, WeylError> {
        self.check(x)?;
        let mut rest = x.canonical().clone();
        let mut out = WeylElement::zero();
        while let Some((a, b, c)) = leading_term(&rest)? {
            if a + b > self.degree_bound {
                return Err(WeylError::DegreeBound {
                    degree: a + b,
                    bound: self.degree_bound,
                });
            }
            let basis = self.psi_canonical(a, b)?;
            let (a2, b2, lead) = leading_term(&basis)?.expect("basis element is nonzero");
            debug_assert!(a2 == a && b2 == b && lead.is_one());
            rest -= &basis.scale(&c);
            out.add_term((a, b), c);
        }
        Ok(out)
    }
}

/// Leading term of a canonical form in the order: total degree, then the
/// exponent of `delta[1]`. Returns `(a, b, coefficient)` for `delta[0]^a delta[1]^b`.
fn leading_term(c: &Cochain) -> Result<Option<(u32, u32, Scalar)>, WeylError> {
    let mut best: Option<(u32, u32, Scalar)> = None;
    for (m, coef) in c.terms() {
        let (a, b) = window_exponents(m).ok_or_else(|| WeylError::NotCanonical(c.to_string()))?;
        let better = match &best {
            None => true,
            Some((ba, bb, _)) => (a + b, b) > (ba + bb, *bb),
        };
        if better {
            best = Some((a, b, coef.clone()));
        }
    }
    Ok(best)
}

fn window_exponents(m: &Monomial) -> Option<(u32, u32)> {
    if !m.antifields().is_empty() {
        return None;
    }
    let mut out = (0, 0);
    for &(s, e) in m.fields() {
        match s {
            0 => out.0 = e,
            1 => out.1 = e,
            _ => return None,
        }
    }
    Some(out)
}

/// Sites `{0,1}` exponents of a canonical monomial, if it is one.
pub fn canonical_exponents(m: &Monomial) -> Option<(u32, u32)> {
    window_exponents(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> Scalar {
        Scalar::hbar()
    }

    fn q() -> WeylElement {
        WeylElement::q()
    }

    fn p() -> WeylElement {
        WeylElement::p()
    }

    #[test]
    fn defining_relation() {
        assert_eq!(&p() * &q(), &WeylElement::monomial(1, 1) + &WeylElement::constant(h()));
        assert_eq!(&q() * &p(), WeylElement::monomial(1, 1));
        let expected = &WeylElement::monomial(2, 1) + &q().scale(&(&h() * &Scalar::from_int(2)));
        assert_eq!(&p() * &q().pow(2), expected);
    }

    #[test]
    fn reordering_matches_single_swaps() {
        // p^2 q^2 by hand: q^2 p^2 + 4 hbar q p + 2 hbar^2
        let lhs = &p().pow(2) * &q().pow(2);
        let rhs = WeylElement::from_terms([
            ((2, 2), Scalar::one()),
            ((1, 1), h().scale(&BigRational::from_integer(4.into()))),
            ((0, 0), h().pow(2).scale(&BigRational::from_integer(2.into()))),
        ]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rendering() {
        let w = &(&p() * &q()) - &q().scale(&Scalar::from_int(2));
        assert_eq!(w.to_string(), "q*p - 2*q + hbar");
        assert_eq!(WeylElement::zero().to_string(), "0");
    }

    #[test]
    fn time_evolution_generators_massless() {
        let m = ModelParams::massless();
        assert_eq!(time_evolution(&q(), &m), &q() + &p());
        assert_eq!(time_evolution(&p(), &m), p());
    }

    #[test]
    fn time_evolution_symbolic_p() {
        let s = ModelParams::symbolic();
        let diff = Scalar::alpha() - Scalar::alpha_pow(-1);
        let expected = WeylElement::from_terms([
            ((1, 0), diff.pow(2).scale(&BigRational::new(1.into(), 4.into()))),
            ((0, 1), Scalar::alpha_sum().scale(&half(1))),
        ]);
        assert_eq!(time_evolution(&p(), &s), expected);
    }

    #[test]
    fn time_evolution_preserves_commutator() {
        let s = ModelParams::symbolic();
        let tq = time_evolution(&q(), &s);
        let tp = time_evolution(&p(), &s);
        assert_eq!(&(&tp * &tq) - &(&tq * &tp), WeylElement::constant(h()));
    }

    #[test]
    fn time_reversal_examples() {
        let qp = WeylElement::monomial(1, 1);
        assert_eq!(time_reversal_weyl(&qp), -(&qp + &WeylElement::constant(h())));
        assert_eq!(time_reversal_weyl(&q().pow(2)), q().pow(2));
        let w = &(&p().pow(3) * &q().pow(2)) + &q();
        assert_eq!(time_reversal_weyl(&time_reversal_weyl(&w)), w);
    }

    #[test]
    fn time_reversal_reverses_products() {
        let x = &(&p() * &q()) + &p().pow(2);
        let y = &q().pow(2) - &p();
        assert_eq!(
            time_reversal_weyl(&(&x * &y)),
            &time_reversal_weyl(&y) * &time_reversal_weyl(&x)
        );
    }

    #[test]
    fn fock_examples() {
        let v = FockVector::q_power(3);
        assert_eq!(fock_action(&q(), &v), FockVector::q_power(4));
        assert_eq!(fock_action(&p(), &v), FockVector::q_power(2).scale(&(&h() * &Scalar::from_int(3))));
        assert!(fock_action(&p(), &FockVector::vacuum()).is_zero());
        let one = Scalar::one();
        assert_eq!(
            fock_action_with(&p(), &v, &one),
            FockVector::q_power(2).scale(&Scalar::from_int(3))
        );
    }

    #[test]
    fn fock_commutator() {
        let v = FockVector::from_terms([(0, Scalar::from_int(2)), (4, Scalar::alpha())]);
        let lhs = &fock_action(&p(), &fock_action(&q(), &v)) - &fock_action(&q(), &fock_action(&p(), &v));
        assert_eq!(lhs, v.scale(&h()));
    }

    #[test]
    fn coinvariant_ideal_is_generated_by_p() {
        let [gq, gp] = coinvariant_generators();
        assert!(gq.is_zero());
        assert_eq!(gp, p().scale(&Scalar::from_int(2)));
        assert!(in_left_ideal_of_p(&(&q().pow(3) * &p())));
        assert!(!in_left_ideal_of_p(&(&p() * &q())));
    }

    #[test]
    fn coinvariants_over_all_elements_contain_hbar() {
        // qp - tau(qp) = 2qp + hbar, and 2qp lies in Weyl p.
        let qp = WeylElement::monomial(1, 1);
        let g = &qp - &time_reversal_weyl(&qp);
        let rest = &g - &qp.scale(&Scalar::from_int(2));
        assert_eq!(rest, WeylElement::constant(h()));
    }

    #[test]
    fn generator_classes_map_to_generators() {
        let mut alg = StarAlgebra::new(ModelParams::symbolic(), StarGeometry::default()).unwrap();
        let qc = alg.q_class();
        let pc = alg.p_class();
        let one = alg.unit();
        assert_eq!(alg.class_to_weyl(&qc).unwrap(), q());
        assert_eq!(alg.class_to_weyl(&pc).unwrap(), p());
        assert_eq!(alg.class_to_weyl(&one).unwrap(), WeylElement::one());
        let c = Scalar::alpha_sum().scale(&half(-1));
        let expected = &Cochain::field(1) + &Cochain::field(0).scale(&c);
        assert_eq!(pc.canonical(), &expected);
    }

    #[test]
    fn massless_star_square_of_q() {
        let mut alg = StarAlgebra::new(ModelParams::massless(), StarGeometry::default()).unwrap();
        let qc = alg.q_class();
        let t = alg.star_traced(&qc, &qc).unwrap();
        assert!(t.verify(alg.params()));
        assert_eq!(t.reduction.normal_form, Cochain::field(0).pow(2));
    }

    #[test]
    fn massless_commutator_is_hbar() {
        for g in [StarGeometry::default(), StarGeometry::massless35()] {
            let mut alg = StarAlgebra::new(ModelParams::massless(), g).unwrap();
            let x = alg.class(&(&Cochain::field(2) - &Cochain::field(1))).unwrap();
            let y = alg.q_class();
            let c = alg.star(&x, &y).unwrap().sub(&alg.star(&y, &x).unwrap()).unwrap();
            assert_eq!(c.canonical(), &Cochain::constant(h()));
            assert!(c.verify());
        }
    }

    #[test]
    fn massive_commutator_unnormalized() {
        let mut alg = StarAlgebra::new(ModelParams::symbolic(), StarGeometry::default()).unwrap();
        let x = alg.class(&(&Cochain::field(1) - &Cochain::field(-1))).unwrap();
        let y = alg.q_class();
        let c = alg.star(&x, &y).unwrap().sub(&alg.star(&y, &x).unwrap()).unwrap();
        assert_eq!(c.canonical(), &Cochain::constant(h().scale(&BigRational::from_integer(2.into()))));
    }

    #[test]
    fn weyl_round_trip_small() {
        let mut alg = StarAlgebra::new(ModelParams::symbolic(), StarGeometry::default()).unwrap();
        for a in 0..3 {
            for b in 0..3 - a {
                let w = WeylElement::monomial(a, b);
                let c = alg.weyl_to_class(&w).unwrap();
                assert_eq!(alg.class_to_weyl(&c).unwrap(), w);
            }
        }
    }

    #[test]
    fn degree_bound_enforced() {
        let mut alg = StarAlgebra::new(ModelParams::massless(), StarGeometry::default())
            .unwrap()
            .with_degree_bound(1);
        let c = alg.class(&Cochain::field(0).pow(2)).unwrap();
        assert!(matches!(alg.class_to_weyl(&c), Err(WeylError::DegreeBound { .. })));
    }

    #[test]
    fn class_translation_matches_time_evolution_on_generators() {
        let s = ModelParams::symbolic();
        let mut alg = StarAlgebra::new(s.clone(), StarGeometry::default()).unwrap();
        for gen in [q(), p()] {
            let x = alg.weyl_to_class(&gen).unwrap();
            let tx = alg.class(&translate(x.canonical(), 1)).unwrap();
            assert_eq!(alg.class_to_weyl(&tx).unwrap(), time_evolution(&gen, &s));
        }
    }

    #[test]
    fn class_reversal_on_generators() {
        let mut alg = StarAlgebra::new(ModelParams::symbolic(), StarGeometry::default()).unwrap();
        let qc = alg.q_class();
        let pc = alg.p_class();
        let tq = alg.class(&time_reversal(qc.canonical())).unwrap();
        let tp = alg.class(&time_reversal(pc.canonical())).unwrap();
        assert_eq!(alg.class_to_weyl(&tq).unwrap(), q());
        assert_eq!(alg.class_to_weyl(&tp).unwrap(), -p());
    }
}
