//! Exact arithmetic in Q and in the cyclotomic field Q(ζ₁₂).
//!
//! Every coordinate that appears in the construction (ζ₆, ζ₃, i, ±1, √3)
//! lies in Q(ζ₁₂), so the field is fixed once and for all rather than built
//! from a generic number-field tower. Elements are stored in the power basis
//! {1, ζ, ζ², ζ³} with ζ = ζ₁₂ a root of ζ⁴ − ζ² + 1, and rationals are kept
//! normalized (positive denominator, lowest terms) after every operation so
//! that equality stays structural.
//!
//! Internally the field is also viewed as the tower Q ⊂ Q(i) ⊂ Q(i)(√3);
//! inversion and square-root extraction reduce along that tower down to
//! square-root checks on plain rationals, which avoids any factoring
//! machinery.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// Errors raised by field operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("element is not real: {0}")]
    NotReal(String),
}

/// Convenience constructor for a rational from two machine integers.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience constructor for an integer rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact square root of a rational: `Some(s)` with s ≥ 0 and s² = x, if one exists.
pub fn rat_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(Rat::zero());
    }
    // x is reduced, so x is a square iff numerator and denominator both are.
    let num = x.numer();
    let den = x.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

/// An element of Q(ζ₁₂), written c₀ + c₁ζ + c₂ζ² + c₃ζ³ with ζ = e^{iπ/6}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem {
    coeffs: [Rat; 4],
}

impl FieldElem {
    pub fn new(coeffs: [Rat; 4]) -> Self {
        FieldElem { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat; 4] {
        &self.coeffs
    }

    pub fn zero() -> Self {
        FieldElem::new([Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()])
    }

    pub fn one() -> Self {
        FieldElem::new([Rat::one(), Rat::zero(), Rat::zero(), Rat::zero()])
    }

    pub fn from_rat(r: Rat) -> Self {
        FieldElem::new([r, Rat::zero(), Rat::zero(), Rat::zero()])
    }

    pub fn from_int(n: i64) -> Self {
        FieldElem::from_rat(rat_int(n))
    }

    /// ζ₁₂, the generator of the field.
    pub fn zeta12() -> Self {
        FieldElem::new([Rat::zero(), Rat::one(), Rat::zero(), Rat::zero()])
    }

    /// ζ₆ = ζ².
    pub fn zeta6() -> Self {
        FieldElem::new([Rat::zero(), Rat::zero(), Rat::one(), Rat::zero()])
    }

    /// ζ₃ = ζ⁴, reduced to ζ² − 1.
    pub fn zeta3() -> Self {
        FieldElem::new([-Rat::one(), Rat::zero(), Rat::one(), Rat::zero()])
    }

    /// The imaginary unit i = ζ³.
    pub fn i() -> Self {
        FieldElem::new([Rat::zero(), Rat::zero(), Rat::zero(), Rat::one()])
    }

    /// √3 = ζ + ζ¹¹, reduced to 2ζ − ζ³.
    pub fn sqrt3() -> Self {
        FieldElem::new([Rat::zero(), rat_int(2), Rat::zero(), rat_int(-1)])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Returns the rational value if the element lies in Q.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Returns the integer value if the element lies in Z.
    pub fn as_int(&self) -> Option<BigInt> {
        let r = self.as_rat()?;
        if r.denom().is_one() {
            Some(r.numer().clone())
        } else {
            None
        }
    }

    /// Decomposition a = (p + qi) + (r + ti)·√3 along the tower Q(i)(√3).
    fn decompose(&self) -> ((Rat, Rat), (Rat, Rat)) {
        let [c0, c1, c2, c3] = self.coeffs.clone();
        let half = rat(1, 2);
        let r = &c1 * &half;
        let t = &c2 * &half;
        let p = c0 + &t;
        let q = c3 + &r;
        ((p, q), (r, t))
    }

    /// Inverse of `decompose`.
    fn recompose(a: (Rat, Rat), b: (Rat, Rat)) -> Self {
        let (p, q) = a;
        let (r, t) = b;
        let two = rat_int(2);
        FieldElem::new([p - &t, &two * &r, &two * &t, q - &r])
    }

    /// Galois conjugation √3 ↦ −√3 (fixes Q(i)).
    fn conj_sqrt3(&self) -> Self {
        let (a, b) = self.decompose();
        FieldElem::recompose(a, (-b.0, -b.1))
    }

    /// Multiplicative inverse. Fails on zero.
    pub fn inv(&self) -> Result<FieldElem, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        // 1/(A + B√3) = (A − B√3) / (A² − 3B²) with A, B ∈ Q(i),
        // then 1/(u + vi) = (u − vi) / (u² + v²).
        let conj = self.conj_sqrt3();
        let norm_qi = self.clone() * conj.clone();
        let ((u, v), (r, t)) = norm_qi.decompose();
        debug_assert!(r.is_zero() && t.is_zero(), "norm must land in Q(i)");
        let n = &u * &u + &v * &v;
        debug_assert!(!n.is_zero());
        let ninv = n.recip();
        let delta_inv = FieldElem::recompose((&u * &ninv, -(&v * &ninv)), (Rat::zero(), Rat::zero()));
        let result = conj * delta_inv;
        debug_assert!((result.clone() * self.clone()).is_one());
        Ok(result)
    }

    /// Integer power (negative exponents invert; fails on 0^negative).
    pub fn pow(&self, e: i64) -> Result<FieldElem, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = FieldElem::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * base.clone();
        }
        Ok(acc)
    }

    /// Both square roots ±s with s² = a, when a is a square in Q(ζ₁₂).
    ///
    /// Works down the tower: write a = A + B√3 with A, B ∈ Q(i). The square
    /// roots of elements of Q(i) reduce to rational square-root checks, and
    /// the B ≠ 0 case reduces to square roots in Q(i) of (A ± δ)/2 where
    /// δ² = A² − 3B². Every returned root is verified exactly before return.
    pub fn sqrt(&self) -> Option<(FieldElem, FieldElem)> {
        if self.is_zero() {
            return Some((FieldElem::zero(), FieldElem::zero()));
        }
        let ((pa, qa), (pb, qb)) = self.decompose();
        let b_zero = pb.is_zero() && qb.is_zero();
        let mut found: Option<FieldElem> = None;
        if b_zero {
            // s = C with C² = A, or s = D√3 with D² = A/3.
            if let Some((c, d)) = sqrt_qi(&pa, &qa) {
                found = Some(FieldElem::recompose((c, d), (Rat::zero(), Rat::zero())));
            } else {
                let third = rat(1, 3);
                if let Some((c, d)) = sqrt_qi(&(&pa * &third), &(&qa * &third)) {
                    found = Some(FieldElem::recompose((Rat::zero(), Rat::zero()), (c, d)));
                }
            }
        } else {
            // 4C⁴ − 4AC² + 3B² = 0, so C² = (A ± δ)/2 with δ² = A² − 3B².
            let a2 = qi_mul((&pa, &qa), (&pa, &qa));
            let b2 = qi_mul((&pb, &qb), (&pb, &qb));
            let disc = (a2.0 - rat_int(3) * b2.0, a2.1 - rat_int(3) * b2.1);
            if let Some(delta) = sqrt_qi(&disc.0, &disc.1) {
                let half = rat(1, 2);
                for sign in [1i64, -1] {
                    let s = rat_int(sign);
                    let u = ((&pa + &s * &delta.0) * &half, (&qa + &s * &delta.1) * &half);
                    if let Some(c) = sqrt_qi(&u.0, &u.1) {
                        if c.0.is_zero() && c.1.is_zero() {
                            continue;
                        }
                        // D = B / (2C)
                        let two_c = (rat_int(2) * &c.0, rat_int(2) * &c.1);
                        let d = qi_div((&pb, &qb), (&two_c.0, &two_c.1));
                        found = Some(FieldElem::recompose(c, d));
                        break;
                    }
                }
            }
        }
        let s = found?;
        if (s.clone() * s.clone()) == *self {
            let neg = -s.clone();
            Some((s, neg))
        } else {
            None
        }
    }

    /// Evaluates the defining polynomial at ζ = e^{iπ/6} in double precision.
    pub fn embed(&self) -> Complex64 {
        let zeta = Complex64::from_polar(1.0, std::f64::consts::PI / 6.0);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut zpow = Complex64::new(1.0, 0.0);
        for c in &self.coeffs {
            acc += zpow * c.to_f64().unwrap_or(f64::NAN);
            zpow *= zeta;
        }
        acc
    }

    /// Whether the element lies in the real subfield Q(√3).
    pub fn is_real(&self) -> bool {
        // a = (p + qi) + (r + ti)√3 is real iff q = t = 0
        let ((_, q), (_, t)) = self.decompose();
        q.is_zero() && t.is_zero()
    }

    /// Exact sign of a real element (in the embedding with √3 > 0).
    pub fn real_sign(&self) -> Result<i32, FieldError> {
        let ((p, q), (r, t)) = self.decompose();
        if !q.is_zero() || !t.is_zero() {
            return Err(FieldError::NotReal(self.to_string()));
        }
        // sign of p + r√3
        if r.is_zero() {
            return Ok(rat_sign(&p));
        }
        if p.is_zero() {
            return Ok(rat_sign(&r));
        }
        if p.is_positive() == r.is_positive() {
            return Ok(rat_sign(&p));
        }
        // mixed signs: compare p² with 3r² (never equal since √3 is irrational)
        let p2 = &p * &p;
        let r23 = rat_int(3) * &r * &r;
        debug_assert!(p2 != r23);
        if p2 > r23 {
            Ok(rat_sign(&p))
        } else {
            Ok(rat_sign(&r))
        }
    }

    /// Applies the Galois automorphism ζ ↦ ζ⁵ to the coefficients.
    pub fn galois_sigma5(&self) -> Self {
        // ζ⁵ = ζ³ − ζ, (ζ⁵)² = 1 − ζ², (ζ⁵)³ = ζ³
        let [c0, c1, c2, c3] = self.coeffs.clone();
        FieldElem::new([c0 + &c2, -c1.clone(), -c2, c1 + c3])
    }
}

fn rat_sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Multiplication in Q(i) on (re, im) pairs.
fn qi_mul(a: (&Rat, &Rat), b: (&Rat, &Rat)) -> (Rat, Rat) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

/// Division in Q(i); the divisor must be nonzero.
fn qi_div(a: (&Rat, &Rat), b: (&Rat, &Rat)) -> (Rat, Rat) {
    let n = b.0 * b.0 + b.1 * b.1;
    debug_assert!(!n.is_zero());
    let re = (a.0 * b.0 + a.1 * b.1) / &n;
    let im = (a.1 * b.0 - a.0 * b.1) / &n;
    (re, im)
}

/// One square root of u + vi in Q(i), if it exists (the other is its negative).
fn sqrt_qi(u: &Rat, v: &Rat) -> Option<(Rat, Rat)> {
    if v.is_zero() {
        if u.is_zero() {
            return Some((Rat::zero(), Rat::zero()));
        }
        if u.is_positive() {
            return rat_sqrt(u).map(|c| (c, Rat::zero()));
        }
        return rat_sqrt(&-u.clone()).map(|d| (Rat::zero(), d));
    }
    // c² = (u + n)/2 with n = √(u² + v²), then d = v/(2c).
    let n = rat_sqrt(&(u * u + v * v))?;
    let c2 = (u + &n) / rat_int(2);
    let c = rat_sqrt(&c2)?;
    if c.is_zero() {
        return None;
    }
    let d = v / (rat_int(2) * &c);
    Some((c, d))
}

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: FieldElem) -> FieldElem {
        let mut out = self.coeffs;
        for (o, r) in out.iter_mut().zip(rhs.coeffs) {
            *o += r;
        }
        FieldElem::new(out)
    }
}

impl Sub for FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: FieldElem) -> FieldElem {
        self + (-rhs)
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        let mut out = self.coeffs;
        for o in out.iter_mut() {
            *o = -o.clone();
        }
        FieldElem::new(out)
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: FieldElem) -> FieldElem {
        // polynomial product of degree ≤ 6, then reduce with
        // ζ⁴ = ζ² − 1, ζ⁵ = ζ³ − ζ, ζ⁶ = −1
        let mut raw = [
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
        ];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] += a * b;
            }
        }
        let [r0, r1, r2, r3, r4, r5, r6] = raw;
        FieldElem::new([r0 - &r4 - &r6, r1 - &r5, r2 + r4, r3 + r5])
    }
}

impl Div for FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: FieldElem) -> FieldElem {
        self * rhs.inv().expect("division by zero field element")
    }
}

impl fmt::Display for FieldElem {
    /// Canonical text form, parseable by the divisor DSL.
    ///
    /// Common constants print by name (`zeta6`, `zeta3`, `i`, `sqrt3`, their
    /// negatives); everything else prints as a polynomial in `zeta12`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, val) in [
            ("zeta12", FieldElem::zeta12()),
            ("zeta6", FieldElem::zeta6()),
            ("zeta3", FieldElem::zeta3()),
            ("i", FieldElem::i()),
            ("sqrt3", FieldElem::sqrt3()),
        ] {
            if *self == val {
                return write!(f, "{name}");
            }
            if *self == -val {
                return write!(f, "-{name}");
            }
        }
        if let Some(r) = self.as_rat() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = c.is_negative();
            if first {
                if sign {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "zeta12")?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_elem(rng: &mut ChaCha8Rng) -> FieldElem {
        let mut coeffs = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
        for c in coeffs.iter_mut() {
            let num = rng.gen_range(-9i64..=9);
            let den = rng.gen_range(1i64..=9);
            *c = rat(num, den);
        }
        FieldElem::new(coeffs)
    }

    #[test]
    fn minimal_polynomial_relation() {
        // ζ⁴ reduces to ζ² − 1 exactly
        let z = FieldElem::zeta12();
        let z4 = z.pow(4).unwrap();
        let expected = FieldElem::zeta6() - FieldElem::one();
        assert_eq!(z4, expected);
    }

    #[test]
    fn zeta6_cubed_is_minus_one() {
        let z6 = FieldElem::zeta6();
        assert_eq!(z6.pow(3).unwrap(), -FieldElem::one());
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = FieldElem::i();
        assert_eq!(i.clone() * i, -FieldElem::one());
    }

    #[test]
    fn sqrt3_squares_to_three() {
        let s = FieldElem::sqrt3();
        assert_eq!(s.clone() * s, FieldElem::from_int(3));
    }

    #[test]
    fn zeta6_squared_is_zeta3() {
        let z6 = FieldElem::zeta6();
        assert_eq!(z6.clone() * z6, FieldElem::zeta3());
    }

    #[test]
    fn sqrt_of_zeta3_is_zeta6() {
        let (s, t) = FieldElem::zeta3().sqrt().expect("zeta3 is a square");
        assert!(s == FieldElem::zeta6() || t == FieldElem::zeta6());
        assert_eq!(s, -t);
    }

    #[test]
    fn sqrt_of_minus_one_is_i() {
        let (s, t) = (-FieldElem::one()).sqrt().expect("-1 is a square");
        assert!(s == FieldElem::i() || t == FieldElem::i());
    }

    #[test]
    fn sqrt_of_two_absent() {
        assert!(FieldElem::from_int(2).sqrt().is_none());
    }

    #[test]
    fn sqrt_of_sixty_three_absent() {
        // h(2) = 2⁶ − 1 = 63 on the genus-2 curve
        assert!(FieldElem::from_int(63).sqrt().is_none());
    }

    #[test]
    fn sqrt_of_three_and_minus_three() {
        let (s, _) = FieldElem::from_int(3).sqrt().unwrap();
        assert!(s == FieldElem::sqrt3() || s == -FieldElem::sqrt3());
        let (m, _) = FieldElem::from_int(-3).sqrt().unwrap();
        assert_eq!(m.clone() * m, FieldElem::from_int(-3));
    }

    #[test]
    fn field_axioms_on_random_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..1000 {
            let a = random_elem(&mut rng);
            let b = random_elem(&mut rng);
            let c = random_elem(&mut rng);
            assert_eq!(
                (a.clone() + b.clone()) + c.clone(),
                a.clone() + (b.clone() + c.clone())
            );
            assert_eq!(
                (a.clone() * b.clone()) * c.clone(),
                a.clone() * (b.clone() * c.clone())
            );
            assert_eq!(
                a.clone() * (b.clone() + c.clone()),
                a.clone() * b.clone() + a.clone() * c.clone()
            );
            if !a.is_zero() {
                assert!((a.clone() * a.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn sqrt_soundness_on_random_squares() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for _ in 0..200 {
            let a = random_elem(&mut rng);
            let sq = a.clone() * a.clone();
            let (s, t) = sq.sqrt().expect("a square must have a root");
            assert_eq!(s.clone() * s.clone(), sq);
            assert_eq!(s, -t);
        }
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(56);
        for _ in 0..1000 {
            let a = random_elem(&mut rng);
            let b = random_elem(&mut rng);
            let sum = (a.clone() + b.clone()).embed();
            let prod = (a.clone() * b.clone()).embed();
            let ea = a.embed();
            let eb = b.embed();
            let scale_add = 1.0 + ea.norm() + eb.norm();
            let scale_mul = 1.0 + ea.norm() * eb.norm();
            assert!((sum - (ea + eb)).norm() <= 1e-12 * scale_add);
            assert!((prod - (ea * eb)).norm() <= 1e-12 * scale_mul);
        }
    }

    #[test]
    fn embedding_of_named_constants() {
        assert!((FieldElem::one().embed() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let z6 = FieldElem::zeta6().embed();
        assert!((z6 - Complex64::new(0.5, 0.8660254037844386)).norm() < 1e-12);
        let i = FieldElem::i().embed();
        assert!((i - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn real_sign_is_exact() {
        // 7 − 4√3 > 0 (since 49 > 48), while 2 − 3·... pick -5 + 3√3 > 0 (27 > 25)
        let e = FieldElem::from_int(7) - FieldElem::from_int(4) * FieldElem::sqrt3();
        assert_eq!(e.real_sign().unwrap(), 1);
        let e = FieldElem::from_int(-5) + FieldElem::from_int(3) * FieldElem::sqrt3();
        assert_eq!(e.real_sign().unwrap(), 1);
        let e = FieldElem::from_int(5) - FieldElem::from_int(3) * FieldElem::sqrt3();
        assert_eq!(e.real_sign().unwrap(), -1);
        assert!(FieldElem::i().real_sign().is_err());
    }

    #[test]
    fn galois_sigma5_fixes_i_and_flips_sqrt3() {
        assert_eq!(FieldElem::i().galois_sigma5(), FieldElem::i());
        assert_eq!(FieldElem::sqrt3().galois_sigma5(), -FieldElem::sqrt3());
        let mut rng = ChaCha8Rng::seed_from_u64(78);
        for _ in 0..100 {
            let a = random_elem(&mut rng);
            let b = random_elem(&mut rng);
            assert_eq!(
                (a.clone() * b.clone()).galois_sigma5(),
                a.galois_sigma5() * b.galois_sigma5()
            );
        }
    }

    #[test]
    fn display_roundtrips_named_constants() {
        assert_eq!(FieldElem::zeta6().to_string(), "zeta6");
        assert_eq!((-FieldElem::i()).to_string(), "-i");
        assert_eq!(FieldElem::from_int(0).to_string(), "0");
        assert_eq!(rat(1, 2).to_string(), "1/2");
    }
}
