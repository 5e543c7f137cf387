use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{sign_of, IntPoly, RatPoly, Sturm};
use crate::error::{Error, Result};
use crate::exact::{self, Interval};

/// `Q(beta)` with `beta` the largest real root (> 1) of a monic integer polynomial.
#[derive(Debug)]
pub struct NumberField {
    minpoly: IntPoly,
    rat: RatPoly,
    degree: usize,
    enclosure: RwLock<Interval>,
    floor: u32,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly
    }
}

impl Eq for NumberField {}

impl NumberField {
    /// Rejects non-monic input, small factors found by trial division, and
    /// polynomials without a real root above 1.
    pub fn new(minpoly: IntPoly) -> Result<Arc<NumberField>> {
        let degree = minpoly
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidPolynomial("degree must be at least 1".into()))?;
        if !minpoly.is_monic() {
            return Err(Error::InvalidPolynomial(format!("{minpoly} is not monic")));
        }
        if let Some(f) = minpoly.small_factor() {
            return Err(Error::InvalidPolynomial(format!(
                "{minpoly} has the factor {f}"
            )));
        }
        let rat = minpoly.to_rat();
        let one = BigRational::one();
        let enclosure = if degree == 1 {
            let b = -BigRational::from_integer(minpoly.coeffs()[0].clone());
            if b <= one {
                return Err(Error::Precondition(format!(
                    "{minpoly} has no real root > 1"
                )));
            }
            Interval::point(b)
        } else {
            let sturm = Sturm::new(&rat);
            if sturm.count_above(&one) == 0 {
                return Err(Error::Precondition(format!(
                    "{minpoly} has no real root > 1"
                )));
            }
            let mut lo = one;
            let mut hi = BigRational::from_integer(minpoly.cauchy_bound());
            // isolate the largest root: keep it in (lo, hi] with nothing above hi
            while sturm.count(&lo, &hi) > 1 {
                let mid = (&lo + &hi) / BigRational::from_integer(2.into());
                if sturm.count(&mid, &hi) >= 1 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Interval::new(lo, hi)
        };
        let field = NumberField {
            minpoly,
            rat,
            degree,
            enclosure: RwLock::new(enclosure),
            floor: 0,
        };
        field.refine(&exact::rat(1, 1 << 20));
        let floor = field.compute_floor();
        Ok(Arc::new(NumberField { floor, ..field }))
    }

    pub fn parse_json(text: &str) -> Result<Arc<NumberField>> {
        NumberField::new(IntPoly::parse_json(text)?)
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Current enclosure of `beta`; it only ever shrinks.
    pub fn enclosure(&self) -> Interval {
        self.enclosure.read().expect("enclosure lock").clone()
    }

    /// Shrinks the enclosure to width at most `width` by sign bisection.
    pub fn refine(&self, width: &BigRational) {
        if self.enclosure().width() <= *width {
            return;
        }
        let mut guard = self.enclosure.write().expect("enclosure lock");
        let two = BigRational::from_integer(2.into());
        while guard.width() > *width {
            let mid = (&guard.lo + &guard.hi) / &two;
            // monic with beta the largest root: positive above beta, negative just below
            match sign_of(&self.rat.eval(&mid)) {
                1 => guard.hi = mid,
                -1 => guard.lo = mid,
                _ => *guard = Interval::point(mid),
            }
        }
    }

    /// `floor(beta)`, decided by sign tests.
    pub fn floor_beta(&self) -> u32 {
        self.floor
    }

    fn compute_floor(&self) -> u32 {
        loop {
            let e = self.enclosure();
            let (a, b) = (exact::floor(&e.lo), exact::floor(&e.hi));
            if a == b
                || self
                    .rat
                    .eval(&BigRational::from_integer(b.clone()))
                    .is_zero()
            {
                return b.to_u32().expect("beta below 2^32");
            }
            self.refine(&(e.width() / BigRational::from_integer(16.into())));
        }
    }

    /// Rational approximation of `beta` for reporting.
    pub fn approx(&self) -> f64 {
        self.refine(&BigRational::new(1.into(), BigInt::one() << 60));
        let e = self.enclosure();
        let mid = (e.lo + e.hi) / BigRational::from_integer(2.into());
        mid.to_f64().unwrap_or(f64::NAN)
    }
}

/// `sum coeffs[i] beta^i`, always reduced modulo the minimal polynomial.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(exact::format_rational).collect();
        write!(f, "FieldElement[{}]", parts.join(", "))
    }
}

impl FieldElement {
    pub fn new(field: &Arc<NumberField>, coeffs: Vec<BigRational>) -> Result<FieldElement> {
        if coeffs.len() > 2 * field.degree {
            return Err(Error::Precondition("too many coefficients".into()));
        }
        Ok(FieldElement::reduced(field, coeffs))
    }

    fn reduced(field: &Arc<NumberField>, mut c: Vec<BigRational>) -> FieldElement {
        let l = field.degree;
        let m = field.minpoly.coeffs();
        while c.len() > l {
            let top = c.pop().expect("non-empty");
            let base = c.len() - l;
            for (j, mj) in m[..l].iter().enumerate() {
                c[base + j] -= &top * BigRational::from_integer(mj.clone());
            }
        }
        c.resize(l, BigRational::zero());
        FieldElement {
            field: field.clone(),
            coeffs: c,
        }
    }

    pub fn from_rational(field: &Arc<NumberField>, x: BigRational) -> FieldElement {
        FieldElement::reduced(field, vec![x])
    }

    pub fn from_int(field: &Arc<NumberField>, x: i64) -> FieldElement {
        FieldElement::from_rational(field, BigRational::from_integer(x.into()))
    }

    pub fn zero(field: &Arc<NumberField>) -> FieldElement {
        FieldElement::from_int(field, 0)
    }

    pub fn one(field: &Arc<NumberField>) -> FieldElement {
        FieldElement::from_int(field, 1)
    }

    pub fn beta(field: &Arc<NumberField>) -> FieldElement {
        FieldElement::reduced(field, vec![BigRational::zero(), BigRational::one()])
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The element is a rational number.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(
        &self,
        other: &FieldElement,
        f: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, x: &BigRational) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * x).collect(),
        }
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        let l = self.field.degree;
        let mut out = vec![BigRational::zero(); 2 * l - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(FieldElement::reduced(&self.field, out))
    }

    /// Multiplicative inverse, by solving `self * x = 1` over `Q`.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::Precondition("zero has no inverse".into()));
        }
        let l = self.field.degree;
        // column j is self * beta^j
        let mut cols = Vec::with_capacity(l);
        let mut cur = self.clone();
        let beta = FieldElement::beta(&self.field);
        for _ in 0..l {
            cols.push(cur.coeffs.clone());
            cur = cur.mul(&beta)?;
        }
        let mut a: Vec<Vec<BigRational>> = (0..l)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..l).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for col in 0..l {
            let pivot = (col..l).find(|&r| !a[r][col].is_zero()).ok_or_else(|| {
                Error::InvalidPolynomial("minimal polynomial is reducible".into())
            })?;
            a.swap(col, pivot);
            let p = a[col][col].clone();
            for x in a[col].iter_mut() {
                *x /= &p;
            }
            for r in 0..l {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let pivot_row = a[col].clone();
                    for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                        *x -= &f * y;
                    }
                }
            }
        }
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs: a.into_iter().map(|row| row[l].clone()).collect(),
        })
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = FieldElement::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Rational enclosure of the value from the current enclosure of `beta`.
    pub fn enclosure(&self) -> Interval {
        let b = self.field.enclosure();
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        let (mut plo, mut phi) = (BigRational::one(), BigRational::one());
        for c in &self.coeffs {
            if c.is_positive() {
                lo += c * &plo;
                hi += c * &phi;
            } else if c.is_negative() {
                lo += c * &phi;
                hi += c * &plo;
            }
            plo *= &b.lo;
            phi *= &b.hi;
        }
        Interval::new(lo, hi)
    }

    /// Enclosure of width at most `width`.
    pub fn enclosure_within(&self, width: &BigRational) -> Interval {
        loop {
            let e = self.enclosure();
            if e.width() <= *width {
                return e;
            }
            let bw = self.field.enclosure().width();
            let ratio = &e.width() / width;
            let shrink = BigRational::from_integer(ratio.ceil().to_integer() * 2);
            self.field.refine(&(bw / shrink));
        }
    }

    /// Enclosure excluding zero whose width is at most `rel` times its smaller
    /// endpoint in modulus. Panics on zero.
    pub fn enclosure_relative(&self, rel: &BigRational) -> Interval {
        assert!(!self.is_zero(), "relative enclosure of zero");
        loop {
            let e = self.enclosure();
            let small = if e.lo.is_positive() {
                Some(e.lo.clone())
            } else if e.hi.is_negative() {
                Some(-e.hi.clone())
            } else {
                None
            };
            if small.is_some_and(|m| e.width() <= &m * rel) {
                return e;
            }
            let w = self.field.enclosure().width();
            self.field
                .refine(&(w / BigRational::from_integer(BigInt::one() << 32)));
        }
    }

    /// Exact sign: symbolic zero test, then refinement until the enclosure excludes 0.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        loop {
            let e = self.enclosure();
            if e.lo.is_positive() {
                return 1;
            }
            if e.hi.is_negative() {
                return -1;
            }
            let w = self.field.enclosure().width();
            self.field
                .refine(&(w / BigRational::from_integer(BigInt::one() << 32)));
        }
    }

    /// Common denominator `D` and integers `a_i` with `D * self = sum a_i beta^i`.
    pub fn integer_form(&self) -> (BigInt, Vec<BigInt>) {
        let d = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let a = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(d.clone())).to_integer())
            .collect();
        (d, a)
    }
}
