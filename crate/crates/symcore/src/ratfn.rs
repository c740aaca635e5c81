//! Canonical rational functions `num / den`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::poly::{gcd, Poly, Symbol};

/// Rational function in canonical form: `gcd(num, den) = 1`, `den` has
/// leading coefficient 1 under the fixed monomial order, and zero is `0/1`.
/// Two equal functions therefore have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl Default for RatFn {
    fn default() -> Self {
        RatFn::zero()
    }
}

impl RatFn {
    pub fn zero() -> Self {
        RatFn {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFn::from_poly(Poly::one())
    }

    pub fn from_int(n: i64) -> Self {
        RatFn::from_poly(Poly::from_int(n))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        RatFn::constant(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn constant(c: BigRational) -> Self {
        RatFn::from_poly(Poly::constant(c))
    }

    pub fn symbol(s: &Symbol) -> Self {
        RatFn::from_poly(Poly::var(s.clone()))
    }

    pub fn var(name: &str) -> Self {
        RatFn::symbol(&Symbol::new(name))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn {
            num: p,
            den: Poly::one(),
        }
    }

    /// Build `num / den` and reduce to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFn::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFn::zero();
        }
        if den.is_constant() {
            let c = den.leading_coeff();
            return RatFn {
                num: if c.is_one() { num } else { num.scale(&c.recip()) },
                den: Poly::one(),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        RatFn::make_monic(num, den)
    }

    fn make_monic(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFn { num, den }
        } else {
            let inv = lc.recip();
            RatFn {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn vars(&self) -> BTreeSet<Symbol> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    pub fn depends_on(&self, s: &Symbol) -> bool {
        self.num.degree_in(s) > 0 || self.den.degree_in(s) > 0
    }

    pub fn scale(&self, c: &BigRational) -> RatFn {
        if c.is_zero() {
            return RatFn::zero();
        }
        RatFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<RatFn, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFn::make_monic(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFn) -> Result<RatFn, Error> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, n: i32) -> Result<RatFn, Error> {
        if n < 0 {
            return self.recip()?.pow(-n);
        }
        let n = n as u32;
        // gcd(p, q) = 1 implies gcd(p^n, q^n) = 1, and monic stays monic.
        Ok(RatFn {
            num: self.num.pow(n),
            den: self.den.pow(n),
        })
    }

    /// Exact partial derivative with respect to `s`.
    pub fn derivative(&self, s: &Symbol) -> RatFn {
        let dn = self.num.derivative(s);
        if self.den.is_one() {
            return RatFn::from_poly(dn);
        }
        let dd = self.den.derivative(s);
        if dd.is_zero() {
            return RatFn::reduce(dn, self.den.clone());
        }
        let top = &(&dn * &self.den) - &(&self.num * &dd);
        RatFn::reduce(top, &self.den * &self.den)
    }

    /// Exact evaluation at rational values.
    pub fn eval_exact<F>(&self, lookup: &F) -> Result<BigRational, Error>
    where
        F: Fn(&Symbol) -> Option<BigRational>,
    {
        let unknown = |s: Symbol| Error::UnknownSymbol {
            name: s.name().to_string(),
            pos: None,
        };
        let d = self.den.eval_with(lookup).map_err(unknown)?;
        if d.is_zero() {
            return Err(Error::Domain(format!("denominator {} vanishes", self.den_string())));
        }
        let n = self.num.eval_with(lookup).map_err(unknown)?;
        Ok(n / d)
    }

    /// Simultaneous substitution of symbols by rational functions.
    pub fn substitute(&self, bindings: &BTreeMap<Symbol, RatFn>) -> Result<RatFn, Error> {
        if bindings.is_empty() || self.vars().iter().all(|v| !bindings.contains_key(v)) {
            return Ok(self.clone());
        }
        let num = substitute_poly(&self.num, bindings);
        let den = substitute_poly(&self.den, bindings);
        num.checked_div(&den)
    }

    fn den_string(&self) -> String {
        crate::expr::Expr::from_poly(&self.den).to_string()
    }
}

fn substitute_poly(p: &Poly, bindings: &BTreeMap<Symbol, RatFn>) -> RatFn {
    let mut total = RatFn::zero();
    for (m, c) in p.terms_desc() {
        let mut t = RatFn::constant(c.clone());
        for (v, e) in m.factors() {
            let base = match bindings.get(v) {
                Some(r) => r.clone(),
                None => RatFn::symbol(v),
            };
            t = &t * &base.pow(*e as i32).expect("non-negative power");
        }
        total = &total + &t;
    }
    total
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::expr::Expr::from_ratfn(self))
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFn::from_poly(&self.num + &rhs.num);
            }
            return RatFn::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let (ld, rd) = if g.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (
                self.den.div_exact(&g).expect("gcd divides"),
                rhs.den.div_exact(&g).expect("gcd divides"),
            )
        };
        let num = &(&self.num * &rd) + &(&rhs.num * &ld);
        let den = &self.den * &rd;
        RatFn::reduce(num, den)
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFn::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel: the result is reduced without a gcd of the full products.
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let div = |p: &Poly, g: &Poly| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).expect("gcd divides")
            }
        };
        let num = &div(&self.num, &g1) * &div(&rhs.num, &g2);
        let den = &div(&self.den, &g2) * &div(&rhs.den, &g1);
        RatFn::make_monic(num, den)
    }
}

/// Panics on division by zero; use [`RatFn::checked_div`] for fallible division.
impl Div for &RatFn {
    type Output = RatFn;
    fn div(self, rhs: &RatFn) -> RatFn {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFn {
            type Output = RatFn;
            fn $m(self, rhs: RatFn) -> RatFn { (&self).$m(&rhs) }
        }
        impl $tr<&RatFn> for RatFn {
            type Output = RatFn;
            fn $m(self, rhs: &RatFn) -> RatFn { (&self).$m(rhs) }
        }
        impl $tr<RatFn> for &RatFn {
            type Output = RatFn;
            fn $m(self, rhs: RatFn) -> RatFn { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

impl std::iter::Sum for RatFn {
    fn sum<I: Iterator<Item = RatFn>>(iter: I) -> RatFn {
        iter.fold(RatFn::zero(), |a, b| &a + &b)
    }
}

impl<'a> std::iter::Sum<&'a RatFn> for RatFn {
    fn sum<I: Iterator<Item = &'a RatFn>>(iter: I) -> RatFn {
        iter.fold(RatFn::zero(), |a, b| &a + b)
    }
}

impl From<i64> for RatFn {
    fn from(n: i64) -> Self {
        RatFn::from_int(n)
    }
}

impl From<Poly> for RatFn {
    fn from(p: Poly) -> Self {
        RatFn::from_poly(p)
    }
}
