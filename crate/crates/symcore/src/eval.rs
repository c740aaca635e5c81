//! Numeric evaluation at sample points.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::Error;
use crate::poly::Symbol;
use crate::ratfn::RatFn;

/// A coordinate that the chart excludes from a single value, e.g. `x != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exclusion {
    pub coord: Symbol,
    pub value: BigRational,
}

/// Assignment of values to coordinates and parameters.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Point {
    values: BTreeMap<Symbol, BigRational>,
}

impl Point {
    pub fn new() -> Self {
        Point::default()
    }

    pub fn set(&mut self, s: &Symbol, v: BigRational) -> &mut Self {
        self.values.insert(s.clone(), v);
        self
    }

    /// Floats are converted exactly; NaN and infinities are rejected.
    pub fn set_f64(&mut self, s: &Symbol, v: f64) -> Result<&mut Self, Error> {
        let q = BigRational::from_float(v)
            .ok_or_else(|| Error::Domain(format!("non-finite value for {s}")))?;
        Ok(self.set(s, q))
    }

    pub fn with(mut self, name: &str, v: f64) -> Self {
        self.set_f64(&Symbol::new(name), v)
            .expect("finite sample value");
        self
    }

    pub fn get(&self, s: &Symbol) -> Option<&BigRational> {
        self.values.get(s)
    }

    pub fn satisfies(&self, exclusions: &[Exclusion]) -> bool {
        exclusions
            .iter()
            .all(|ex| self.values.get(&ex.coord).is_none_or(|v| *v != ex.value))
    }
}

/// Exact rational value at `p`, rounded once to `f64`.
pub fn evaluate_ratfn(r: &RatFn, p: &Point) -> Result<f64, Error> {
    let q = r.eval_exact(&|s: &Symbol| p.get(s).cloned())?;
    q.to_f64()
        .ok_or_else(|| Error::Domain("value not representable as f64".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_square_at_two() {
        let e = RatFn::from_int(2) / RatFn::var("y").pow(2).unwrap();
        let p = Point::new().with("y", 2.0);
        assert_eq!(evaluate_ratfn(&e, &p).unwrap(), 0.5);
    }

    #[test]
    fn pole_is_domain_error() {
        let e = RatFn::one() / RatFn::var("y");
        let p = Point::new().with("y", 0.0);
        assert!(matches!(evaluate_ratfn(&e, &p), Err(Error::Domain(_))));
    }

    #[test]
    fn negative_value() {
        let e = RatFn::from_int(-2) / RatFn::var("y");
        let p = Point::new().with("y", 4.0);
        assert_eq!(evaluate_ratfn(&e, &p).unwrap(), -0.5);
    }

    #[test]
    fn missing_symbol_reported() {
        let e = RatFn::var("x");
        assert!(matches!(
            evaluate_ratfn(&e, &Point::new()),
            Err(Error::UnknownSymbol { .. })
        ));
    }

    #[test]
    fn exclusions() {
        let ex = [Exclusion {
            coord: Symbol::new("x"),
            value: BigRational::from_integer(0.into()),
        }];
        assert!(!Point::new().with("x", 0.0).satisfies(&ex));
        assert!(Point::new().with("x", 1.5).satisfies(&ex));
    }
}
