//! Rewriting degree-0 observables to canonical representatives.
//!
//! Every field site outside a two-site window is pushed toward it with the
//! relation `delta[y+1] M = (alpha + alpha^-1) delta[y] M - delta[y-1] M
//! - hbar dM/d delta[y] + d_hbar(bdelta[y] M)` (and its mirror image). The
//! accumulated `bdelta[y] M` terms form a homotopy, so each result comes with
//! a certificate `input = normal_form + d_hbar(homotopy)`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::cochain::{support_within, Cochain, Monomial, Site};
use crate::complex::{dquantum, ModelParams};
use crate::operad::Interval;
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("reduction applies to even degree-0 cochains only")]
    NotEvenDegreeZero,
    #[error("cochain is not supported in {0}")]
    SupportOutside(String),
    #[error("window {window} is not made of field sites of {interval}")]
    WindowOutside { window: String, interval: String },
    #[error("site {site} cannot be reduced in {interval}: antifield site {antifield} is not available")]
    IrreducibleSite {
        site: Site,
        antifield: Site,
        interval: String,
    },
    #[error("site {site} lies in the window {window}")]
    InsideWindow { site: Site, window: String },
    #[error("site {site} does not occur in the monomial")]
    AbsentSite { site: Site },
}

/// The site pair `{base, base + 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Window {
    base: Site,
}

impl Window {
    pub fn new(base: Site) -> Self {
        Self { base }
    }

    pub fn base(self) -> Site {
        self.base
    }

    pub fn sites(self) -> [Site; 2] {
        [self.base, self.base + 1]
    }

    pub fn contains(self, s: Site) -> bool {
        s == self.base || s == self.base + 1
    }

    /// Lattice distance from `s` to the nearest window site.
    pub fn distance(self, s: Site) -> u64 {
        if s < self.base {
            (self.base - s) as u64
        } else if s > self.base + 1 {
            (s - self.base - 1) as u64
        } else {
            0
        }
    }

    pub fn fits(self, interval: &Interval) -> bool {
        self.sites().iter().all(|&s| interval.contains_field_site(s))
    }
}

impl Default for Window {
    fn default() -> Self {
        Window::new(0)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.base, self.base + 1)
    }
}

/// Witness of `input = normal_form + d_hbar(homotopy)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyCertificate {
    pub input: Cochain,
    pub normal_form: Cochain,
    pub homotopy: Cochain,
}

impl HomotopyCertificate {
    pub fn trivial(c: Cochain) -> Self {
        Self {
            input: c.clone(),
            normal_form: c,
            homotopy: Cochain::zero(),
        }
    }

    /// `input - normal_form - d_hbar(homotopy)`; zero for a valid certificate.
    pub fn defect(&self, p: &ModelParams) -> Cochain {
        let mut r = &self.input - &self.normal_form;
        r -= &dquantum(&self.homotopy, p);
        r
    }

    /// Certificate for `self.input + other.input`.
    pub fn sum(&self, other: &HomotopyCertificate) -> HomotopyCertificate {
        HomotopyCertificate {
            input: &self.input + &other.input,
            normal_form: &self.normal_form + &other.normal_form,
            homotopy: &self.homotopy + &other.homotopy,
        }
    }

    pub fn scale(&self, c: &Scalar) -> HomotopyCertificate {
        HomotopyCertificate {
            input: self.input.scale(c),
            normal_form: self.normal_form.scale(c),
            homotopy: self.homotopy.scale(c),
        }
    }
}

/// True iff `input - normal_form - d_hbar(homotopy) = 0` exactly.
pub fn verify_certificate(cert: &HomotopyCertificate, p: &ModelParams) -> bool {
    cert.defect(p).is_zero()
}

/// Which field site to rewrite first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    /// Farthest site from the window, ties toward the right.
    #[default]
    RightmostOutermost,
    /// Farthest site from the window, ties toward the left.
    LeftmostOutermost,
    /// Nearest site outside the window, ties toward the left.
    Innermost,
}

impl Strategy {
    fn pick(self, m: &Monomial, w: Window) -> Option<Site> {
        let outside = m.fields().iter().map(|&(s, _)| s).filter(|&s| !w.contains(s));
        match self {
            Strategy::RightmostOutermost => outside.max_by_key(|&s| (w.distance(s), s)),
            Strategy::LeftmostOutermost => outside.max_by_key(|&s| (w.distance(s), -s)),
            Strategy::Innermost => outside.min_by_key(|&s| (w.distance(s), s)),
        }
    }
}

/// Distances of all field factors to the window, sorted descending.
/// Rewrites strictly decrease this in the lexicographic (multiset) order.
pub fn termination_measure(m: &Monomial, w: Window) -> Vec<u64> {
    let mut v: Vec<u64> = m
        .fields()
        .iter()
        .flat_map(|&(s, e)| std::iter::repeat_n(w.distance(s), e as usize))
        .collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Moves the factor `delta[site]` of the even monomial `m` one step toward
/// the window. Returns `(rewritten, homotopy)` with
/// `m = rewritten + d_hbar(homotopy)`.
pub fn rewrite_step(
    m: &Monomial,
    site: Site,
    interval: &Interval,
    window: Window,
    p: &ModelParams,
) -> Result<(Cochain, Cochain), ReductionError> {
    if !m.is_even() {
        return Err(ReductionError::NotEvenDegreeZero);
    }
    if window.contains(site) {
        return Err(ReductionError::InsideWindow {
            site,
            window: window.to_string(),
        });
    }
    let rest = m
        .without_field(site)
        .ok_or(ReductionError::AbsentSite { site })?;
    let y = if site > window.base() + 1 { site - 1 } else { site + 1 };
    if !interval.contains_antifield_site(y) {
        return Err(ReductionError::IrreducibleSite {
            site,
            antifield: y,
            interval: interval.to_string(),
        });
    }
    let mirror = 2 * y - site;
    let mut out = Cochain::zero();
    out.add_term(rest.with_field(y, 1), p.alpha_sum().clone());
    out.add_term(rest.with_field(mirror, 1), -Scalar::one());
    let e = rest.field_exponent(y);
    if e > 0 {
        let lowered = rest.without_field(y).unwrap();
        out.add_term(lowered, -(p.hbar() * &Scalar::from_int(e as i64)));
    }
    let (_, h) = Monomial::antifield(y)
        .mul(&rest)
        .expect("even monomial has no antifields");
    Ok((out, Cochain::from_monomial(h)))
}

/// Memoizing reducer for a fixed interval, window, model and strategy.
pub struct Reducer {
    interval: Interval,
    window: Window,
    params: ModelParams,
    strategy: Strategy,
    memo: HashMap<Monomial, (Cochain, Cochain)>,
    nf_memo: HashMap<Monomial, Cochain>,
}

impl Reducer {
    pub fn new(
        interval: Interval,
        window: Window,
        params: ModelParams,
        strategy: Strategy,
    ) -> Result<Self, ReductionError> {
        if !window.fits(&interval) {
            return Err(ReductionError::WindowOutside {
                window: window.to_string(),
                interval: interval.to_string(),
            });
        }
        Ok(Self {
            interval,
            window,
            params,
            strategy,
            memo: HashMap::new(),
            nf_memo: HashMap::new(),
        })
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    fn admit(&self, c: &Cochain) -> Result<(), ReductionError> {
        if !c.is_even() {
            return Err(ReductionError::NotEvenDegreeZero);
        }
        if !support_within(c, &self.interval) {
            return Err(ReductionError::SupportOutside(self.interval.to_string()));
        }
        Ok(())
    }

    pub fn reduce(&mut self, c: &Cochain) -> Result<HomotopyCertificate, ReductionError> {
        self.admit(c)?;
        let mut nf = Cochain::zero();
        let mut homotopy = Cochain::zero();
        for (m, coef) in c.terms() {
            let (n, h) = self.reduce_monomial(m)?;
            nf += &n.scale(coef);
            homotopy += &h.scale(coef);
        }
        Ok(HomotopyCertificate {
            input: c.clone(),
            normal_form: nf,
            homotopy,
        })
    }

    fn reduce_monomial(&mut self, m: &Monomial) -> Result<(Cochain, Cochain), ReductionError> {
        if let Some(hit) = self.memo.get(m) {
            return Ok(hit.clone());
        }
        let result = match self.strategy.pick(m, self.window) {
            None => (Cochain::from_monomial(m.clone()), Cochain::zero()),
            Some(site) => {
                let (rewritten, mut homotopy) =
                    rewrite_step(m, site, &self.interval, self.window, &self.params)?;
                let before = termination_measure(m, self.window);
                let mut nf = Cochain::zero();
                for (m2, coef) in rewritten.terms() {
                    assert!(
                        termination_measure(m2, self.window) < before,
                        "rewrite of {m} at {site} did not decrease the measure"
                    );
                    let (n, h) = self.reduce_monomial(m2)?;
                    nf += &n.scale(coef);
                    homotopy += &h.scale(coef);
                }
                (nf, homotopy)
            }
        };
        self.memo.insert(m.clone(), result.clone());
        Ok(result)
    }

    /// Normal form only; skips the homotopy bookkeeping of [`Reducer::reduce`].
    pub fn reduce_normal_form(&mut self, c: &Cochain) -> Result<Cochain, ReductionError> {
        self.admit(c)?;
        let mut nf = Cochain::zero();
        for (m, coef) in c.terms() {
            self.fill_nf(m)?;
            nf += &self.nf_memo[m].scale(coef);
        }
        Ok(nf)
    }

    fn fill_nf(&mut self, m: &Monomial) -> Result<(), ReductionError> {
        if self.nf_memo.contains_key(m) {
            return Ok(());
        }
        let nf = match self.strategy.pick(m, self.window) {
            None => Cochain::from_monomial(m.clone()),
            Some(site) => {
                let (rewritten, _) = rewrite_step(m, site, &self.interval, self.window, &self.params)?;
                let before = termination_measure(m, self.window);
                let mut nf = Cochain::zero();
                for (m2, coef) in rewritten.terms() {
                    assert!(
                        termination_measure(m2, self.window) < before,
                        "rewrite of {m} at {site} did not decrease the measure"
                    );
                    self.fill_nf(m2)?;
                    nf += &self.nf_memo[m2].scale(coef);
                }
                nf
            }
        };
        self.nf_memo.insert(m.clone(), nf);
        Ok(())
    }
}

/// Canonical representative with field sites in `window`, default strategy.
pub fn normal_form(
    c: &Cochain,
    interval: &Interval,
    window: Window,
    p: &ModelParams,
) -> Result<HomotopyCertificate, ReductionError> {
    normal_form_with(c, interval, window, p, Strategy::default())
}

pub fn normal_form_with(
    c: &Cochain,
    interval: &Interval,
    window: Window,
    p: &ModelParams,
    strategy: Strategy,
) -> Result<HomotopyCertificate, ReductionError> {
    Reducer::new(interval.clone(), window, p.clone(), strategy)?.reduce(c)
}

/// Representative of the same class supported in the `target` window.
pub fn relocate(
    c: &Cochain,
    interval: &Interval,
    target: Window,
    p: &ModelParams,
) -> Result<HomotopyCertificate, ReductionError> {
    normal_form(c, interval, target, p)
}
