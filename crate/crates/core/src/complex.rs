//! Differentials on the observables.
//!
//! `Q_alpha` is the massive discrete Laplacian, `d` the classical differential
//! with `d bdelta[x] = Q_alpha delta[x]`, `Δ` the odd Laplacian and
//! `d_hbar = d + hbar Δ` the quantum differential.

use num_rational::BigRational;
use thiserror::Error;

use crate::cochain::{Cochain, LatticeFunction, Monomial, Sign, Site};
use crate::scalars::{Scalar, ScalarError};
use crate::weyl::WeylElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("the section representatives require alpha = 1")]
    NotMassless,
}

/// The mass parameter `alpha` and the quantization parameter `hbar`, each
/// either symbolic or a rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModelParams {
    alpha: Scalar,
    hbar: Scalar,
    alpha_sum: Scalar,
}

impl ModelParams {
    pub fn new(alpha: Scalar, hbar: Scalar) -> Result<Self, ComplexError> {
        if alpha.is_zero() {
            return Err(ScalarError::AlphaNotInvertible.into());
        }
        let inv = alpha.inverse()?;
        let alpha_sum = &alpha + &inv;
        Ok(Self {
            alpha,
            hbar,
            alpha_sum,
        })
    }

    /// Symbolic `alpha` and symbolic `hbar`.
    pub fn symbolic() -> Self {
        Self::new(Scalar::alpha(), Scalar::hbar()).unwrap()
    }

    /// The massless model: `alpha = 1`, symbolic `hbar`.
    pub fn massless() -> Self {
        Self::new(Scalar::one(), Scalar::hbar()).unwrap()
    }

    /// Rational `alpha`, symbolic `hbar`.
    pub fn with_alpha(alpha: BigRational) -> Result<Self, ComplexError> {
        Self::new(Scalar::from_rational(alpha), Scalar::hbar())
    }

    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    pub fn hbar(&self) -> &Scalar {
        &self.hbar
    }

    /// `alpha + alpha^-1`.
    pub fn alpha_sum(&self) -> &Scalar {
        &self.alpha_sum
    }

    pub fn is_massless(&self) -> bool {
        self.alpha.is_one()
    }
}

/// `(Q_alpha f)(x) = f(x-1) - (alpha + alpha^-1) f(x) + f(x+1)`.
pub fn laplace(f: &LatticeFunction, p: &ModelParams) -> LatticeFunction {
    let mut out = LatticeFunction::zero();
    let diag = -p.alpha_sum();
    for (x, v) in f.iter() {
        out.add_at(x + 1, v);
        out.add_at(x - 1, v);
        out.add_at(x, &(v * &diag));
    }
    out
}

/// `d bdelta[y] = delta[y-1] - (alpha + alpha^-1) delta[y] + delta[y+1]` as a
/// list of `(site, coefficient)`.
fn laplace_column(y: Site, p: &ModelParams) -> [(Site, Scalar); 3] {
    [
        (y - 1, Scalar::one()),
        (y, -p.alpha_sum()),
        (y + 1, Scalar::one()),
    ]
}

/// The classical differential, extended from generators as a degree +1
/// derivation: `d(ab) = d(a) b + (-1)^{deg a} a d(b)`.
pub fn differential(c: &Cochain, p: &ModelParams) -> Cochain {
    let mut out = Cochain::zero();
    for (m, coef) in c.terms() {
        for (i, &y) in m.antifields().iter().enumerate() {
            let sign = Sign::from_parity(i % 2 == 1);
            let rest = m.without_antifield_at(i);
            for (s, w) in laplace_column(y, p) {
                out.add_term(rest.with_field(s, 1), sign.apply(coef * &w));
            }
        }
    }
    out
}

/// `Δ = sum_x d/d bdelta[x] d/d delta[x]`.
pub fn odd_laplacian(c: &Cochain) -> Cochain {
    let mut out = Cochain::zero();
    let fields = c.field_sites();
    for y in c.antifield_sites() {
        if fields.contains(&y) {
            out += &c.partial_field(y).partial_antifield(y);
        }
    }
    out
}

/// `d_hbar = d + hbar Δ`.
pub fn dquantum(c: &Cochain, p: &ModelParams) -> Cochain {
    let mut out = differential(c, p);
    out += &odd_laplacian(c).scale(p.hbar());
    out
}

/// The shifted Poisson bracket, defined as the failure of `Δ` to be a
/// derivation: `{x,y} = Δ(xy) - Δ(x) y - (-1)^{deg x} x Δ(y)`.
///
/// `x` is taken degree-homogeneous; mixed inputs are split into components.
pub fn poisson_bracket(x: &Cochain, y: &Cochain) -> Cochain {
    let mut out = Cochain::zero();
    for k in degrees(x) {
        let xk = x.homogeneous(k);
        let mut term = odd_laplacian(&(&xk * y));
        term -= &(&odd_laplacian(&xk) * y);
        let xdy = &xk * &odd_laplacian(y);
        if k % 2 == 0 {
            term -= &xdy;
        } else {
            term += &xdy;
        }
        out += &term;
    }
    out
}

fn degrees(c: &Cochain) -> Vec<i64> {
    let mut ds: Vec<i64> = c.terms().map(|(m, _)| m.degree()).collect();
    ds.sort_unstable();
    ds.dedup();
    ds
}

/// The four elements `u, v, A, B` of the kernel of `Q_alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelFunctionKind {
    U,
    V,
    A,
    B,
}

impl KernelFunctionKind {
    pub const ALL: [KernelFunctionKind; 4] = [Self::U, Self::V, Self::A, Self::B];
}

/// Symbolic value at `x` (in terms of the symbol `alpha`).
///
/// `B` uses the telescoping form `sign(x) (alpha^{|x|-1} + alpha^{|x|-3} + ... + alpha^{1-|x|})`
/// so no division by `alpha - alpha^-1` is needed; `B(0) = 0`.
pub fn kernel_function(kind: KernelFunctionKind, x: Site) -> Scalar {
    let x32 = i32::try_from(x).expect("site out of range for alpha exponent");
    match kind {
        KernelFunctionKind::U => Scalar::alpha_pow(x32),
        KernelFunctionKind::V => Scalar::alpha_pow(-x32),
        KernelFunctionKind::A => (Scalar::alpha_pow(x32) + Scalar::alpha_pow(-x32))
            .scale(&BigRational::new(1.into(), 2.into())),
        KernelFunctionKind::B => {
            let n = x32.abs();
            let mut acc = Scalar::zero();
            for j in 0..n {
                acc += &Scalar::alpha_pow(n - 1 - 2 * j);
            }
            if x < 0 {
                -acc
            } else {
                acc
            }
        }
    }
}

/// [`kernel_function`] evaluated at the model's `alpha`.
pub fn kernel_function_at(kind: KernelFunctionKind, x: Site, p: &ModelParams) -> Scalar {
    substitute_alpha(&kernel_function(kind, x), p)
}

/// Replaces the symbol `alpha` by the model's `alpha` (itself possibly symbolic).
pub fn substitute_alpha(s: &Scalar, p: &ModelParams) -> Scalar {
    if p.alpha() == &Scalar::alpha() {
        return s.clone();
    }
    let inv = p.alpha().inverse().expect("alpha is a unit");
    let mut out = Scalar::zero();
    for (&(h, a), c) in s.terms() {
        let base = if a >= 0 { p.alpha() } else { &inv };
        let term = Scalar::term(c.clone(), h, 0) * base.pow(a.unsigned_abs());
        out += &term;
    }
    out
}

/// `φ(f) = (sum_x f(x) A(x)) q + (sum_x f(x) B(x)) p`.
pub fn phi(f: &LatticeFunction, p: &ModelParams) -> WeylElement {
    let mut qc = Scalar::zero();
    let mut pc = Scalar::zero();
    for (x, v) in f.iter() {
        qc += &(v * &kernel_function_at(KernelFunctionKind::A, x, p));
        pc += &(v * &kernel_function_at(KernelFunctionKind::B, x, p));
    }
    WeylElement::from_terms([((1, 0), qc), ((0, 1), pc)])
}

/// Massless representatives `(q ↦ delta[0], p ↦ delta[y+1] - delta[y])`.
pub fn phi_section(y: Site, p: &ModelParams) -> Result<(LatticeFunction, LatticeFunction), ComplexError> {
    if !p.is_massless() {
        return Err(ComplexError::NotMassless);
    }
    Ok((
        LatticeFunction::delta(0),
        LatticeFunction::from_ints([(y + 1, 1), (y, -1)]),
    ))
}

/// `d bdelta[y]` as a cochain.
pub fn differential_of_antifield(y: Site, p: &ModelParams) -> Cochain {
    let mut out = Cochain::zero();
    for (s, w) in laplace_column(y, p) {
        out.add_term(Monomial::field(s), w);
    }
    out
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

    fn int(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn laplace_examples() {
        let f = LatticeFunction::delta(0);
        assert_eq!(
            laplace(&f, &ModelParams::massless()),
            LatticeFunction::from_ints([(-1, 1), (0, -2), (1, 1)])
        );
        assert_eq!(
            laplace(&f, &ModelParams::symbolic()),
            LatticeFunction::from_pairs([(-1, int(1)), (0, -Scalar::alpha_sum()), (1, int(1))])
        );
        assert!(laplace(&LatticeFunction::zero(), &ModelParams::symbolic()).is_zero());
    }

    #[test]
    fn differential_examples() {
        let p = ModelParams::massless();
        assert_eq!(differential(&bd(1), &p), &(&d(0) - &d(1).scale(&int(2))) + &d(2));
        assert!(differential(&d(0).pow(3), &p).is_zero());
        let q = ModelParams::symbolic();
        let x = &bd(0) * &bd(1);
        let expected = &(&differential(&bd(0), &q) * &bd(1)) - &(&bd(0) * &differential(&bd(1), &q));
        let got = differential(&x, &q);
        assert_eq!(got, expected);
        assert!(differential(&got, &q).is_zero());
    }

    #[test]
    fn odd_laplacian_examples() {
        assert!(odd_laplacian(&(&bd(0) * &d(0))).is_one_constant());
        assert!(odd_laplacian(&d(0)).is_zero());
        assert!(odd_laplacian(&(&bd(1) * &d(0))).is_zero());
    }

    #[test]
    fn dquantum_examples() {
        let p = ModelParams::massless();
        let got = dquantum(&(&bd(0) * &d(0)), &p);
        let expected = &(&(&d(-1) * &d(0)) - &d(0).pow(2).scale(&int(2))) + &(&d(1) * &d(0));
        assert_eq!(got, &expected + &Cochain::constant(Scalar::hbar()));
        let got = dquantum(&(&bd(1) * &d(-1)), &p);
        let expected = &(&(&d(0) * &d(-1)) - &(&d(1) * &d(-1)).scale(&int(2))) + &(&d(2) * &d(-1));
        assert_eq!(got, expected);
    }

    #[test]
    fn bracket_on_generators() {
        assert!(poisson_bracket(&bd(0), &d(0)).is_one_constant());
        assert!(poisson_bracket(&d(0), &d(1)).is_zero());
        assert!(poisson_bracket(&bd(2), &d(0)).is_zero());
    }

    #[test]
    fn kernel_function_examples() {
        assert_eq!(kernel_function(KernelFunctionKind::U, 3), Scalar::alpha_pow(3));
        for x in -5..=5 {
            let b = kernel_function_at(KernelFunctionKind::B, x, &ModelParams::massless());
            assert_eq!(b, int(x));
        }
        assert_eq!(kernel_function(KernelFunctionKind::B, 2), Scalar::alpha_sum());
        assert!(kernel_function(KernelFunctionKind::B, 0).is_zero());
    }

    #[test]
    fn phi_examples() {
        let p = ModelParams::symbolic();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(phi(&LatticeFunction::delta(0), &p), WeylElement::q());
        let expected = WeylElement::from_terms([((1, 0), Scalar::alpha_sum().scale(&half)), ((0, 1), int(1))]);
        assert_eq!(phi(&LatticeFunction::delta(1), &p), expected);
        let diff = Scalar::alpha() - Scalar::alpha_pow(-1);
        let expected = WeylElement::from_terms([((1, 0), diff.pow(2).scale(&half)), ((0, 1), Scalar::alpha_sum())]);
        assert_eq!(phi(&LatticeFunction::from_ints([(2, 1), (0, -1)]), &p), expected);
    }

    #[test]
    fn phi_section_examples() {
        let p = ModelParams::massless();
        let (q, pr) = phi_section(1, &p).unwrap();
        assert_eq!(q, LatticeFunction::delta(0));
        assert_eq!(pr, LatticeFunction::from_ints([(2, 1), (1, -1)]));
        let (_, pr) = phi_section(0, &p).unwrap();
        assert_eq!(pr, LatticeFunction::from_ints([(1, 1), (0, -1)]));
        assert_eq!(phi(&pr, &p), WeylElement::p());
        assert_eq!(phi_section(0, &ModelParams::symbolic()), Err(ComplexError::NotMassless));
    }

    #[test]
    fn zero_alpha_rejected() {
        assert!(ModelParams::new(Scalar::zero(), Scalar::hbar()).is_err());
    }

    trait IsOneConstant {
        fn is_one_constant(&self) -> bool;
    }

    impl IsOneConstant for Cochain {
        fn is_one_constant(&self) -> bool {
            *self == Cochain::one()
        }
    }
}
