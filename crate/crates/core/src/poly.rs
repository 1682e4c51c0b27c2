//! Dense univariate polynomials and rational functions over Q(ζ₁₂).
//!
//! This is the workhorse behind valuations of functions on the curves:
//! exact division, gcd, squarefree parts, valuations at a point, and a
//! root finder that locates roots numerically and then reconstructs and
//! verifies them exactly in the field. Nothing here knows about curves.

use num_complex::Complex64;
use num_traits::Zero;
use thiserror::Error;

use crate::exactfield::{FieldElem, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("root of degree-{degree} factor is not representable in Q(zeta12)")]
    UnrepresentableRoot { degree: usize },
}

/// Polynomial with coefficients low-to-high; the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(FieldElem::one())
    }

    pub fn constant(c: FieldElem) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial x.
    pub fn x() -> Self {
        Poly::new(vec![FieldElem::zero(), FieldElem::one()])
    }

    /// Builds a polynomial from integer coefficients, low-to-high.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| FieldElem::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial returns None.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading_coeff(&self) -> FieldElem {
        self.coeffs.last().cloned().unwrap_or_else(FieldElem::zero)
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        let mut acc = FieldElem::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.embed();
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| FieldElem::from_int(k as i64) * c.clone())
            .collect();
        Poly::new(coeffs)
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(FieldElem::zero);
            let b = rhs.coeffs.get(k).cloned().unwrap_or_else(FieldElem::zero);
            out.push(a + b);
        }
        Poly::new(out)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElem::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn divrem(&self, rhs: &Poly) -> Result<(Poly, Poly), PolyError> {
        if rhs.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let dlead = rhs.leading_coeff().inv().expect("nonzero leading coefficient");
        let dd = rhs.degree().unwrap();
        let mut rem = self.clone();
        let mut quot = vec![FieldElem::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading_coeff() * dlead.clone();
            let shift = rd - dd;
            quot[shift] = factor.clone();
            let mut sub = vec![FieldElem::zero(); shift];
            sub.extend(rhs.coeffs.iter().map(|c| c.clone() * factor.clone()));
            rem = rem.sub(&Poly::new(sub));
        }
        Ok((Poly::new(quot), rem))
    }

    /// Monic normalization of a nonzero polynomial.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.leading_coeff().inv().expect("nonzero");
        self.scale(&inv)
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("b nonzero");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let d = self.derivative();
        if d.is_zero() {
            return self.monic();
        }
        let g = self.gcd(&d);
        let (q, r) = self.divrem(&g).expect("gcd divides");
        debug_assert!(r.is_zero());
        q.monic()
    }

    /// Whether gcd(self, self') is constant.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None | Some(0) => true,
            _ => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Multiplicity of `a` as a root, together with the fully deflated quotient.
    pub fn root_multiplicity(&self, a: &FieldElem) -> (usize, Poly) {
        let mut p = self.clone();
        let lin = Poly::new(vec![-a.clone(), FieldElem::one()]);
        let mut mult = 0;
        while !p.is_zero() && p.eval(a).is_zero() {
            let (q, r) = p.divrem(&lin).expect("linear divisor");
            debug_assert!(r.is_zero());
            p = q;
            mult += 1;
        }
        (mult, p)
    }

    /// Applies the Galois map ζ ↦ ζ⁵ to every coefficient.
    pub fn galois_sigma5(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c.galois_sigma5()).collect())
    }

    /// All roots in Q(ζ₁₂) with multiplicities.
    ///
    /// Roots of the squarefree part are located numerically (Durand–Kerner
    /// under the embedding ζ ↦ e^{iπ/6}), paired with roots of the σ₅-twisted
    /// polynomial to pin down all four rational coordinates, rationalized by
    /// continued fractions, and finally verified by exact evaluation. If any
    /// factor resists reconstruction the whole call fails, so a successful
    /// return accounts for every root of the polynomial.
    pub fn roots_in_field(&self) -> Result<Vec<(FieldElem, usize)>, PolyError> {
        if matches!(self.degree(), None | Some(0)) {
            return Ok(vec![]);
        }
        let sf = self.squarefree_part();
        let sf_deg = sf.degree().unwrap();
        if sf_deg == 0 {
            return Ok(vec![]);
        }
        let primary: Vec<Complex64> = durand_kerner(&sf);
        let twisted = sf.galois_sigma5().monic();
        let twin: Vec<Complex64> = durand_kerner(&twisted);

        let mut found: Vec<(FieldElem, usize)> = Vec::new();
        let mut remaining = sf.monic();
        for z in &primary {
            if remaining.degree() == Some(0) {
                break;
            }
            // skip roots already captured by an exact deflation
            if found.iter().any(|(r, _)| (r.embed() - z).norm() < 1e-7) {
                continue;
            }
            let mut verified: Option<FieldElem> = None;
            for w in &twin {
                if let Some(cand) = reconstruct(*z, *w) {
                    if remaining.eval(&cand).is_zero() {
                        verified = Some(cand);
                        break;
                    }
                }
            }
            if let Some(root) = verified {
                let (mult, defl) = remaining.root_multiplicity(&root);
                debug_assert_eq!(mult, 1, "squarefree part has simple roots");
                remaining = defl;
                let (orig_mult, _) = self.root_multiplicity(&root);
                found.push((root, orig_mult));
            }
        }
        match remaining.degree() {
            None | Some(0) => {
                found.sort_by(|a, b| a.0.cmp(&b.0));
                Ok(found)
            }
            Some(d) => Err(PolyError::UnrepresentableRoot { degree: d }),
        }
    }
}

/// Durand–Kerner root finding on the embedded polynomial (assumed squarefree).
fn durand_kerner(p: &Poly) -> Vec<Complex64> {
    let n = match p.degree() {
        None | Some(0) => return vec![],
        Some(d) => d,
    };
    let monic = p.monic();
    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(0.4, 0.0) + Complex64::from_polar(0.9, 1.7 * k as f64 + 0.3))
        .collect();
    for _ in 0..400 {
        let mut shift_max = 0.0f64;
        let snapshot = roots.clone();
        for i in 0..n {
            let zi = snapshot[i];
            let mut denom = Complex64::new(1.0, 0.0);
            for (j, zj) in snapshot.iter().enumerate() {
                if j != i {
                    denom *= zi - zj;
                }
            }
            if denom.norm() < 1e-300 {
                continue;
            }
            let delta = monic.eval_complex(zi) / denom;
            roots[i] = zi - delta;
            shift_max = shift_max.max(delta.norm());
        }
        if shift_max < 1e-14 {
            break;
        }
    }
    roots
}

/// Rationalize a float by continued fractions with bounded denominator.
fn rationalize(x: f64, max_den: i64, tol: f64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let sign: i64 = if x < 0.0 { -1 } else { 1 };
    let target = x.abs();
    let mut v = target;
    let (mut p0, mut q0) = (1i64, 0i64);
    let (mut p1, mut q1) = (v.floor() as i64, 1i64);
    let mut frac = v - v.floor();
    for _ in 0..64 {
        let cand = p1 as f64 / q1 as f64;
        if (cand - target).abs() <= tol {
            return Some(Rat::new((sign * p1).into(), q1.into()));
        }
        if frac.abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
        if v >= 1e15 {
            break;
        }
        let a = v.floor() as i64;
        frac = v - v.floor();
        let p2 = a.checked_mul(p1)?.checked_add(p0)?;
        let q2 = a.checked_mul(q1)?.checked_add(q0)?;
        if q2 > max_den {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    let cand = p1 as f64 / q1 as f64;
    if q1 > 0 && (cand - target).abs() <= tol {
        Some(Rat::new((sign * p1).into(), q1.into()))
    } else {
        None
    }
}

/// Exact reconstruction of a field element from its images under the two
/// embeddings ζ ↦ e^{iπ/6} and ζ ↦ e^{5iπ/6}.
fn reconstruct(z: Complex64, z5: Complex64) -> Option<FieldElem> {
    use nalgebra::{Matrix4, Vector4};
    let w = Complex64::from_polar(1.0, std::f64::consts::PI / 6.0);
    let w5 = Complex64::from_polar(1.0, 5.0 * std::f64::consts::PI / 6.0);
    let cols: Vec<[f64; 4]> = (0..4)
        .map(|k| {
            let a = w.powu(k as u32);
            let b = w5.powu(k as u32);
            [a.re, a.im, b.re, b.im]
        })
        .collect();
    let m = Matrix4::from_fn(|r, c| cols[c][r]);
    let rhs = Vector4::new(z.re, z.im, z5.re, z5.im);
    let sol = m.lu().solve(&rhs)?;
    let mut coeffs = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
    for (k, c) in coeffs.iter_mut().enumerate() {
        *c = rationalize(sol[k], 100_000, 1e-6)?;
    }
    Some(FieldElem::new(coeffs))
}

/// Rational function u = num/den in one variable, normalized so the
/// denominator is monic and coprime to the numerator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFn {
                num: Poly::zero(),
                den: Poly::one(),
            });
        }
        let g = num.gcd(&den);
        let (num, r1) = num.divrem(&g).expect("gcd divides");
        let (den, r2) = den.divrem(&g).expect("gcd divides");
        debug_assert!(r1.is_zero() && r2.is_zero());
        let lead_inv = den.leading_coeff().inv().expect("nonzero");
        Ok(RatFn {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        })
    }

    pub fn zero() -> Self {
        RatFn {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFn {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: FieldElem) -> Self {
        RatFn::from_poly(Poly::constant(c))
    }

    /// x as a rational function.
    pub fn x() -> Self {
        RatFn::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &RatFn) -> RatFn {
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        RatFn::new(num, den).expect("denominator nonzero")
    }

    pub fn sub(&self, rhs: &RatFn) -> RatFn {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &RatFn) -> RatFn {
        RatFn::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den)).expect("denominator nonzero")
    }

    pub fn div(&self, rhs: &RatFn) -> Result<RatFn, PolyError> {
        if rhs.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        RatFn::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }

    /// Valuation at x = a: multiplicity of the root in the numerator minus
    /// the denominator. None encodes +∞ (the zero function).
    pub fn ord_at(&self, a: &FieldElem) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let (zn, _) = self.num.root_multiplicity(a);
        let (zd, _) = self.den.root_multiplicity(a);
        Some(zn as i64 - zd as i64)
    }

    /// Leading coefficient of the local expansion at x = a: the value of
    /// self / (x−a)^ord at a. Nonzero by construction.
    pub fn leading_coeff_at(&self, a: &FieldElem) -> FieldElem {
        debug_assert!(!self.is_zero());
        let (_, dn) = self.num.root_multiplicity(a);
        let (_, dd) = self.den.root_multiplicity(a);
        dn.eval(a) / dd.eval(a)
    }

    /// Degree at infinity: deg(num) − deg(den). None encodes the zero function.
    pub fn inf_degree(&self) -> Option<i64> {
        let n = self.num.degree()?;
        Some(n as i64 - self.den.degree().unwrap() as i64)
    }

    /// Ratio of leading coefficients, the x^{inf_degree} coefficient at infinity.
    pub fn leading_coeff_at_infinity(&self) -> FieldElem {
        debug_assert!(!self.is_zero());
        self.num.leading_coeff() / self.den.leading_coeff()
    }

    pub fn eval(&self, a: &FieldElem) -> Option<FieldElem> {
        let d = self.den.eval(a);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(a) / d)
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "({c})")?;
            } else if k == 1 {
                write!(f, "({c})*x")?;
            } else {
                write!(f, "({c})*x^{k}")?;
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for RatFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.degree() == Some(0) && self.den.leading_coeff().is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rat;

    fn x_to_the(n: usize) -> Poly {
        let mut c = vec![FieldElem::zero(); n + 1];
        c[n] = FieldElem::one();
        Poly::new(c)
    }

    #[test]
    fn divrem_exact() {
        // x⁶ − 1 = (x − 1)(x⁵ + x⁴ + x³ + x² + x + 1)
        let h = x_to_the(6).sub(&Poly::one());
        let lin = Poly::new(vec![-FieldElem::one(), FieldElem::one()]);
        let (q, r) = h.divrem(&lin).unwrap();
        assert!(r.is_zero());
        assert_eq!(q.degree(), Some(5));
        assert_eq!(q.eval(&FieldElem::one()), FieldElem::from_int(6));
    }

    #[test]
    fn gcd_detects_square_factors() {
        let lin = Poly::new(vec![-FieldElem::one(), FieldElem::one()]);
        let sq = lin.mul(&lin).mul(&Poly::x());
        assert!(!sq.is_squarefree());
        assert_eq!(sq.squarefree_part().degree(), Some(2));
        let h = x_to_the(6).sub(&Poly::one());
        assert!(h.is_squarefree());
    }

    #[test]
    fn roots_of_x6_minus_1_are_the_sixth_roots_of_unity() {
        let h = x_to_the(6).sub(&Poly::one());
        let roots = h.roots_in_field().unwrap();
        assert_eq!(roots.len(), 6);
        for (r, m) in &roots {
            assert_eq!(*m, 1);
            assert!(r.pow(6).unwrap().is_one());
        }
        let z6 = FieldElem::zeta6();
        assert!(roots.iter().any(|(r, _)| *r == z6));
        assert!(roots.iter().any(|(r, _)| *r == -z6.clone()));
    }

    #[test]
    fn roots_with_multiplicity() {
        // (x − i)² (x + 1/2)
        let lin_i = Poly::new(vec![-FieldElem::i(), FieldElem::one()]);
        let lin_h = Poly::new(vec![FieldElem::from_rat(rat(1, 2)), FieldElem::one()]);
        let p = lin_i.mul(&lin_i).mul(&lin_h);
        let roots = p.roots_in_field().unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&(FieldElem::i(), 2)));
        assert!(roots.contains(&(FieldElem::from_rat(rat(-1, 2)), 1)));
    }

    #[test]
    fn irrational_roots_are_rejected() {
        // x² − 2 has no roots in Q(ζ₁₂)
        let p = x_to_the(2).sub(&Poly::constant(FieldElem::from_int(2)));
        assert_eq!(
            p.roots_in_field(),
            Err(PolyError::UnrepresentableRoot { degree: 2 })
        );
    }

    #[test]
    fn mixed_rational_and_unrepresentable() {
        // (x − 1)(x² − 2): the rational root is found, then the quadratic blocks
        let lin = Poly::new(vec![-FieldElem::one(), FieldElem::one()]);
        let p = lin.mul(&x_to_the(2).sub(&Poly::constant(FieldElem::from_int(2))));
        assert_eq!(
            p.roots_in_field(),
            Err(PolyError::UnrepresentableRoot { degree: 2 })
        );
    }

    #[test]
    fn ratfn_normalization_and_ord() {
        // u = (x−1)/x
        let num = Poly::new(vec![-FieldElem::one(), FieldElem::one()]);
        let u = RatFn::new(num, Poly::x()).unwrap();
        assert_eq!(u.ord_at(&FieldElem::one()), Some(1));
        assert_eq!(u.ord_at(&FieldElem::zero()), Some(-1));
        assert_eq!(u.ord_at(&FieldElem::from_int(5)), Some(0));
        assert_eq!(u.inf_degree(), Some(0));
        assert_eq!(u.leading_coeff_at_infinity(), FieldElem::one());
        // leading coefficient of (x−1)/x at x=1 is 1/1 = 1
        assert_eq!(u.leading_coeff_at(&FieldElem::one()), FieldElem::one());
    }

    #[test]
    fn ratfn_arithmetic() {
        let x = RatFn::x();
        let one = RatFn::one();
        // 1 − 1/x = (x−1)/x
        let w = one.sub(&one.div(&x).unwrap());
        assert_eq!(w.num().degree(), Some(1));
        assert_eq!(w.den(), &Poly::x());
        let back = w.mul(&x);
        assert_eq!(back.eval(&FieldElem::from_int(3)), Some(FieldElem::from_int(2)));
    }
}
