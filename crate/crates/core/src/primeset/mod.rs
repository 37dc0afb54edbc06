//! Declarative prime sets `S`, their membership predicates and their
//! theoretical natural densities `δ(S)`.
//!
//! Sets are described over rational primes. A prime ideal `𝔭` of a larger
//! field belongs to `S` when the rational prime below it does; for `K = ℚ`
//! this is plain membership.

mod beatty;
mod parse;

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{euler_phi, gcd, kronecker};
use crate::elliptic::{self, BadPrimes, Curve};
use crate::error::{Error, Result};
use crate::numfield::{factor_poly_mod_p, NumberField, PrimeIdeal};

pub use beatty::{beatty_contains, BeattyAlpha};
pub use parse::angle as parse_angle;

/// Outcome of a membership query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Membership {
    In,
    Out,
    /// Ramified (Chebotarev) or bad-reduction (elliptic) prime, left out of `S`.
    Excluded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SetKind {
    AllPrimes,
    Finite {
        primes: Vec<u64>,
    },
    Cofinite {
        excluded: Vec<u64>,
    },
    ArithmeticProgression {
        modulus: u64,
        residue: u64,
    },
    Beatty {
        alpha: BeattyAlpha,
    },
    /// Primes `p ∤ m` whose Frobenius in `ℚ(ζ_m)/ℚ`, i.e. `p mod m`, lies in `residues`.
    CyclotomicChebotarev {
        modulus: u64,
        residues: Vec<u64>,
    },
    /// Primes `p ∤ D` with `(D | p) = symbol`.
    QuadraticChebotarev {
        discriminant: i64,
        symbol: i8,
    },
    /// Unramified primes at which `poly` (leading coefficient first) factors
    /// with the given degree pattern. Identifies a conjugacy class only when
    /// the cycle type determines it (e.g. symmetric Galois group).
    CycleType {
        poly: Vec<i64>,
        pattern: Vec<usize>,
    },
    LangTrotter {
        curve: Curve,
        trace: i64,
        #[serde(default)]
        bad_primes: BadPrimes,
    },
    SatoTate {
        curve: Curve,
        lo: f64,
        hi: f64,
        #[serde(default)]
        bad_primes: BadPrimes,
    },
    Intersection {
        sets: Vec<PrimeSetSpec>,
    },
}

/// A prime set plus an optional user-declared density, which overrides the
/// theoretical one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimeSetSpec {
    #[serde(flatten)]
    pub kind: SetKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<f64>,
}

impl From<SetKind> for PrimeSetSpec {
    fn from(kind: SetKind) -> Self {
        Self { kind, density: None }
    }
}

impl PrimeSetSpec {
    pub fn new(kind: SetKind) -> Result<Self> {
        let s = Self::from(kind);
        s.validate()?;
        Ok(s)
    }

    pub fn all() -> Self {
        SetKind::AllPrimes.into()
    }

    pub fn finite(primes: impl IntoIterator<Item = u64>) -> Self {
        let mut primes: Vec<u64> = primes.into_iter().collect();
        primes.sort_unstable();
        primes.dedup();
        SetKind::Finite { primes }.into()
    }

    pub fn cofinite(excluded: impl IntoIterator<Item = u64>) -> Self {
        let mut excluded: Vec<u64> = excluded.into_iter().collect();
        excluded.sort_unstable();
        excluded.dedup();
        SetKind::Cofinite { excluded }.into()
    }

    pub fn arithmetic_progression(modulus: u64, residue: u64) -> Result<Self> {
        Self::new(SetKind::ArithmeticProgression { modulus, residue })
    }

    pub fn beatty(alpha: BeattyAlpha) -> Self {
        SetKind::Beatty { alpha }.into()
    }

    pub fn sato_tate(curve: Curve, lo: f64, hi: f64) -> Result<Self> {
        Self::new(SetKind::SatoTate {
            curve,
            lo,
            hi,
            bad_primes: BadPrimes::default(),
        })
    }

    pub fn intersection(sets: Vec<PrimeSetSpec>) -> Result<Self> {
        Self::new(SetKind::Intersection { sets })
    }

    /// Declares the density, overriding the theoretical value.
    pub fn with_density(mut self, density: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&density) {
            return Err(Error::Config(format!("density {density} is outside [0, 1]")));
        }
        self.density = Some(density);
        Ok(self)
    }

    /// Parses the text shorthand or a JSON object (see the README).
    pub fn parse(src: &str) -> Result<Self> {
        let s = parse::parse(src)?;
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(d) = self.density {
            if !(0.0..=1.0).contains(&d) {
                return Err(Error::Config(format!("density {d} is outside [0, 1]")));
            }
        }
        match &self.kind {
            SetKind::ArithmeticProgression { modulus, residue } => {
                if *modulus == 0 || gcd(*residue % modulus, *modulus) != 1 {
                    return Err(Error::Config(format!(
                        "progression {residue} mod {modulus} needs gcd(a, q) = 1"
                    )));
                }
            }
            SetKind::CyclotomicChebotarev { modulus, .. } if *modulus == 0 => {
                return Err(Error::Config("cyclotomic modulus must be positive".into()));
            }
            SetKind::QuadraticChebotarev { discriminant, symbol } => {
                if *symbol != 1 && *symbol != -1 {
                    return Err(Error::Config("quadratic symbol must be ±1".into()));
                }
                let r = (discriminant.unsigned_abs() as f64).sqrt().round() as i64;
                if *discriminant >= 0 && r * r == *discriminant {
                    return Err(Error::Config("quadratic discriminant must not be a square".into()));
                }
            }
            SetKind::CycleType { poly, pattern } => {
                if poly.first() != Some(&1) || poly.len() < 2 {
                    return Err(Error::Config("cycle-type polynomial must be monic of degree ≥ 1".into()));
                }
                if pattern.iter().sum::<usize>() != poly.len() - 1 || pattern.contains(&0) {
                    return Err(Error::Config("cycle pattern must partition the degree".into()));
                }
            }
            SetKind::SatoTate { lo, hi, curve, .. } => {
                if !(0.0 <= *lo && lo <= hi && *hi <= PI) {
                    return Err(Error::Config(format!(
                        "Sato-Tate interval [{lo}, {hi}] must satisfy 0 ≤ α₁ ≤ α₂ ≤ π"
                    )));
                }
                Curve::new(curve.a, curve.b, curve.cm)?;
            }
            SetKind::LangTrotter { curve, .. } => {
                Curve::new(curve.a, curve.b, curve.cm)?;
            }
            SetKind::Intersection { sets } => {
                if sets.is_empty() {
                    return Err(Error::Config("intersection of no sets".into()));
                }
                for s in sets {
                    s.validate()?;
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Membership of the rational prime `p`.
    pub fn membership(&self, p: u64) -> Result<Membership> {
        use Membership::*;
        let yes = |b: bool| if b { In } else { Out };
        Ok(match &self.kind {
            SetKind::AllPrimes => In,
            SetKind::Finite { primes } => yes(primes.contains(&p)),
            SetKind::Cofinite { excluded } => yes(!excluded.contains(&p)),
            SetKind::ArithmeticProgression { modulus, residue } => yes(p % modulus == residue % modulus),
            SetKind::Beatty { alpha } => yes(beatty_contains(alpha, p)?),
            SetKind::CyclotomicChebotarev { modulus, residues } => {
                if modulus % p == 0 {
                    Excluded
                } else {
                    yes(residues.iter().any(|r| r % modulus == p % modulus))
                }
            }
            SetKind::QuadraticChebotarev { discriminant, symbol } => match kronecker(*discriminant, p) {
                0 => Excluded,
                s => yes(s == *symbol),
            },
            SetKind::CycleType { poly, pattern } => {
                let rev: Vec<i64> = poly.iter().rev().copied().collect();
                let fac = factor_poly_mod_p(&rev, p);
                if fac.iter().any(|&(_, m)| m > 1) {
                    Excluded
                } else {
                    let mut degs: Vec<usize> = fac.iter().map(|&(d, _)| d).collect();
                    degs.sort_unstable();
                    let mut want = pattern.clone();
                    want.sort_unstable();
                    yes(degs == want)
                }
            }
            SetKind::LangTrotter {
                curve,
                trace,
                bad_primes,
            } => match elliptic_trace(curve, p, *bad_primes)? {
                None => Excluded,
                Some(a) => yes(a == *trace),
            },
            SetKind::SatoTate {
                curve,
                lo,
                hi,
                bad_primes,
            } => match elliptic_trace(curve, p, *bad_primes)? {
                None => Excluded,
                Some(a) => {
                    let theta = elliptic::theta_angle(a, p)?;
                    yes(angle_in(theta, *lo, *hi))
                }
            },
            SetKind::Intersection { sets } => {
                let mut excluded = false;
                for s in sets {
                    match s.membership(p)? {
                        Out => return Ok(Out),
                        Excluded => excluded = true,
                        In => {}
                    }
                }
                if excluded {
                    Excluded
                } else {
                    In
                }
            }
        })
    }

    /// Membership as a boolean; excluded primes are reported as an error.
    pub fn contains(&self, p: u64) -> Result<bool> {
        match self.membership(p)? {
            Membership::In => Ok(true),
            Membership::Out => Ok(false),
            Membership::Excluded => Err(Error::ExcludedPrime {
                p,
                reason: self.exclusion_reason(),
            }),
        }
    }

    fn exclusion_reason(&self) -> &'static str {
        match &self.kind {
            SetKind::LangTrotter { .. } | SetKind::SatoTate { .. } => "bad reduction",
            SetKind::Intersection { .. } => "excluded by a component set",
            _ => "ramified",
        }
    }

    /// Membership of a prime ideal, through the rational prime below it.
    pub fn membership_ideal(&self, ideal: &PrimeIdeal) -> Result<Membership> {
        self.membership(ideal.p)
    }

    /// Memberships of many primes, evaluated in parallel, in input order.
    pub fn membership_many(&self, primes: &[u64]) -> Result<Vec<Membership>> {
        primes.par_iter().map(|&p| self.membership(p)).collect()
    }

    /// `δ(S)` over ℚ: the declared value if any, else the theoretical one.
    pub fn density(&self) -> Option<f64> {
        self.density.or_else(|| self.theoretical_density())
    }

    /// Density among the prime ideals of `field`: the declared value, the
    /// field-independent cases, and residue-class sets over a quadratic field
    /// whose discriminant divides the modulus. Otherwise unknown.
    pub fn density_in(&self, field: &NumberField) -> Option<f64> {
        if field.is_rational() {
            return self.density();
        }
        self.density.or_else(|| match &self.kind {
            SetKind::AllPrimes | SetKind::Cofinite { .. } => Some(1.0),
            SetKind::Finite { .. } => Some(0.0),
            SetKind::ArithmeticProgression { modulus, residue } => {
                quadratic_class_density(field, *modulus, std::slice::from_ref(residue))
            }
            SetKind::CyclotomicChebotarev { modulus, residues } => quadratic_class_density(field, *modulus, residues),
            _ => None,
        })
    }

    pub fn theoretical_density(&self) -> Option<f64> {
        match &self.kind {
            SetKind::AllPrimes | SetKind::Cofinite { .. } => Some(1.0),
            SetKind::Finite { .. } => Some(0.0),
            SetKind::ArithmeticProgression { modulus, .. } => Some(1.0 / euler_phi(*modulus) as f64),
            SetKind::Beatty { alpha } => Some(1.0 / alpha.approx()),
            SetKind::CyclotomicChebotarev { modulus, residues } => {
                let mut classes: Vec<u64> = residues
                    .iter()
                    .map(|r| r % modulus)
                    .filter(|&r| gcd(r, *modulus) == 1)
                    .collect();
                classes.sort_unstable();
                classes.dedup();
                Some(classes.len() as f64 / euler_phi(*modulus) as f64)
            }
            SetKind::QuadraticChebotarev { .. } => Some(0.5),
            SetKind::CycleType { .. } => None,
            SetKind::LangTrotter { curve, trace, .. } => Some(if curve.cm && *trace == 0 { 0.5 } else { 0.0 }),
            SetKind::SatoTate { curve, lo, hi, .. } => {
                if curve.cm {
                    None
                } else {
                    sato_tate_measure(*lo, *hi).ok()
                }
            }
            SetKind::Intersection { .. } => None,
        }
    }

    /// Short human-readable description.
    pub fn describe(&self) -> String {
        parse::describe(self)
    }
}

/// Over a quadratic field of discriminant `D` with `D | q`, every prime in a
/// class `a mod q` splits when `(D | a) = 1` and is inert otherwise. Prime
/// ideals of degree 1 carry all the density, two above each split prime, and
/// half of all rational primes split, so each split class contributes `2/φ(q)`.
fn quadratic_class_density(field: &NumberField, q: u64, residues: &[u64]) -> Option<f64> {
    if field.degree() != 2 {
        return None;
    }
    let d = i64::try_from(field.poly_discriminant()).ok()?;
    if !q.is_multiple_of(d.unsigned_abs()) {
        return None;
    }
    let mut classes: Vec<u64> = residues.iter().map(|r| r % q).filter(|&r| gcd(r, q) == 1).collect();
    classes.sort_unstable();
    classes.dedup();
    let split = classes.iter().filter(|&&a| kronecker(d, a) == 1).count();
    Some(2.0 * split as f64 / euler_phi(q) as f64)
}

fn elliptic_trace(curve: &Curve, p: u64, policy: BadPrimes) -> Result<Option<i64>> {
    if curve.is_good_prime(p) {
        return elliptic::trace_of_frobenius(curve, p).map(Some);
    }
    match policy {
        BadPrimes::Exclude => Ok(None),
        BadPrimes::CountReduction => elliptic::reduction_trace(curve, p).map(Some),
    }
}

/// `[lo, hi)`, closed at `hi = π`.
fn angle_in(theta: f64, lo: f64, hi: f64) -> bool {
    theta >= lo && (theta < hi || (hi == PI && theta <= PI))
}

/// Sato-Tate measure `(2/π) ∫ sin²θ dθ` of `[α₁, α₂] ⊆ [0, π]`.
pub fn sato_tate_measure(lo: f64, hi: f64) -> Result<f64> {
    if !(0.0 <= lo && lo <= hi && hi <= PI) {
        return Err(Error::Domain(format!(
            "Sato-Tate interval [{lo}, {hi}] must satisfy 0 ≤ α₁ ≤ α₂ ≤ π"
        )));
    }
    Ok((hi - lo - ((2.0 * hi).sin() - (2.0 * lo).sin()) / 2.0) / PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contains_examples() {
        let ap = PrimeSetSpec::arithmetic_progression(4, 1).unwrap();
        assert!(ap.contains(5).unwrap());
        assert!(!ap.contains(7).unwrap());
        let b = PrimeSetSpec::beatty(BeattyAlpha::pi());
        assert!(b.contains(3).unwrap());
        assert!(!b.contains(7).unwrap());
    }

    #[test]
    fn measure_examples() {
        assert!((sato_tate_measure(0.0, PI).unwrap() - 1.0).abs() < 1e-15);
        assert!((sato_tate_measure(PI / 3.0, 2.0 * PI / 3.0).unwrap() - 0.609_0).abs() < 1e-5);
        assert!((sato_tate_measure(0.0, PI / 2.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(sato_tate_measure(1.0, 0.5).is_err());
        assert!(sato_tate_measure(-0.1, 0.5).is_err());
        assert!(sato_tate_measure(0.0, 3.2).is_err());
    }

    #[test]
    fn densities() {
        assert_eq!(PrimeSetSpec::arithmetic_progression(4, 1).unwrap().density(), Some(0.5));
        let b = PrimeSetSpec::beatty(BeattyAlpha::pi());
        assert!((b.density().unwrap() - std::f64::consts::FRAC_1_PI).abs() < 1e-12);
        let q = PrimeSetSpec::new(SetKind::QuadraticChebotarev {
            discriminant: 5,
            symbol: 1,
        })
        .unwrap();
        let both = PrimeSetSpec::intersection(vec![b, q]).unwrap();
        assert_eq!(both.density(), None);
        let both = both.with_density(0.5 / PI).unwrap();
        assert!((both.density().unwrap() - 0.5 / PI).abs() < 1e-15);
        assert_eq!(PrimeSetSpec::finite([2, 3]).density(), Some(0.0));
        assert_eq!(PrimeSetSpec::cofinite([2, 3]).density(), Some(1.0));
        let cyc = PrimeSetSpec::new(SetKind::CyclotomicChebotarev {
            modulus: 8,
            residues: vec![1, 7, 9],
        })
        .unwrap();
        assert_eq!(cyc.density(), Some(0.5));
    }

    #[test]
    fn invalid_specs() {
        assert!(PrimeSetSpec::arithmetic_progression(4, 2).is_err());
        let e = Curve::new(-1, 1, false).unwrap();
        assert!(PrimeSetSpec::sato_tate(e, 2.0, 1.0).is_err());
        assert!(PrimeSetSpec::sato_tate(e, 0.0, 4.0).is_err());
        assert!(PrimeSetSpec::all().with_density(1.5).is_err());
        assert!(PrimeSetSpec::new(SetKind::QuadraticChebotarev {
            discriminant: 9,
            symbol: 1
        })
        .is_err());
    }

    #[test]
    fn exclusions() {
        let q = PrimeSetSpec::new(SetKind::QuadraticChebotarev {
            discriminant: -4,
            symbol: 1,
        })
        .unwrap();
        assert_eq!(q.membership(2).unwrap(), Membership::Excluded);
        assert!(matches!(q.contains(2), Err(Error::ExcludedPrime { p: 2, .. })));
        assert!(q.contains(5).unwrap());
        assert!(!q.contains(7).unwrap());

        let e = Curve::new(-1, 1, false).unwrap();
        let excl = PrimeSetSpec::new(SetKind::SatoTate {
            curve: e,
            lo: 0.0,
            hi: PI,
            bad_primes: BadPrimes::Exclude,
        })
        .unwrap();
        assert!(matches!(excl.contains(23), Err(Error::ExcludedPrime { p: 23, .. })));
        let counted = PrimeSetSpec::sato_tate(e, 0.0, PI).unwrap();
        assert!(counted.contains(23).unwrap());
        assert!(counted.contains(2).unwrap());
    }

    #[test]
    fn cycle_type_matches_cubic_splitting() {
        // x³ − 2 splits completely mod p ≡ 1 (mod 3) iff 2 is a cube
        let s = PrimeSetSpec::new(SetKind::CycleType {
            poly: vec![1, 0, 0, -2],
            pattern: vec![1, 1, 1],
        })
        .unwrap();
        assert_eq!(s.membership(3).unwrap(), Membership::Excluded);
        assert!(s.contains(31).unwrap());
        assert!(!s.contains(7).unwrap());
    }

    #[test]
    fn lifting_to_prime_ideals() {
        let k = NumberField::gaussian();
        let ap = PrimeSetSpec::arithmetic_progression(8, 1).unwrap();
        for q in crate::numfield::primes_above(&k, 17) {
            assert_eq!(ap.membership_ideal(&q).unwrap(), Membership::In);
        }
        assert_eq!(ap.density_in(&k), Some(0.5));
        let ap3 = PrimeSetSpec::arithmetic_progression(8, 3).unwrap();
        assert_eq!(ap3.density_in(&k), Some(0.0));
        let ap5 = PrimeSetSpec::arithmetic_progression(5, 1).unwrap();
        assert_eq!(ap5.density_in(&k), None);
        let b = PrimeSetSpec::beatty(BeattyAlpha::pi());
        assert_eq!(b.density_in(&k), None);
        assert_eq!(PrimeSetSpec::all().density_in(&k), Some(1.0));
    }

    #[test]
    fn membership_is_pure() {
        let e = Curve::new(-1, 1, false).unwrap();
        let s = PrimeSetSpec::sato_tate(e, PI / 3.0, 2.0 * PI / 3.0).unwrap();
        let primes = crate::arith::primes_up_to(2000);
        let a = s.membership_many(&primes).unwrap();
        let b: Vec<Membership> = primes.iter().map(|&p| s.membership(p).unwrap()).collect();
        assert_eq!(a, b);
    }
}
