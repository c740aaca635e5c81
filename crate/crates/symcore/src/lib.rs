//! Minimal exact computer-algebra kernel.
//!
//! Scalars are rational functions with rational coefficients in chart
//! coordinates and free parameters. Every value has a canonical form
//! `p/q` (coprime, `q` monic under lex order), so equality of functions is
//! equality of representations and zero-testing is exact.
//!
//! ```
//! use symcore::{parse_expr, normalize, SymbolTable};
//! let t = SymbolTable::new(["y"], Vec::<&str>::new());
//! let e = parse_expr("y*(1/y)", &t).unwrap();
//! assert_eq!(normalize(&e).unwrap().to_string(), "1");
//! ```

#![allow(clippy::needless_range_loop, clippy::too_many_arguments)]

mod error;
pub mod eval;
pub mod expr;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod ratfn;

use std::collections::BTreeMap;

pub use error::Error;
pub use eval::{evaluate_ratfn, Exclusion, Point};
pub use expr::{Expr, SymbolKind};
pub use parse::{parse_expr, SymbolTable};
pub use poly::{Poly, Symbol};
pub use ratfn::RatFn;

/// Canonical tree for `e`; symbol kinds are carried over from `e`.
pub fn normalize(e: &Expr) -> Result<Expr, Error> {
    let kinds = e.symbols();
    let r = e.to_ratfn()?;
    Ok(Expr::from_ratfn_with(&r, &|s| {
        kinds.get(s).copied().unwrap_or(SymbolKind::Parameter)
    }))
}

pub fn differentiate(e: &Expr, coord: &Symbol) -> Result<Expr, Error> {
    let kinds = e.symbols();
    let d = e.to_ratfn()?.derivative(coord);
    Ok(Expr::from_ratfn_with(&d, &|s| {
        kinds.get(s).copied().unwrap_or(SymbolKind::Parameter)
    }))
}

pub fn is_identically_zero(e: &Expr) -> Result<bool, Error> {
    Ok(e.to_ratfn()?.is_zero())
}

pub fn evaluate(e: &Expr, p: &Point) -> Result<f64, Error> {
    evaluate_ratfn(&e.to_ratfn()?, p)
}

/// Simultaneous substitution followed by normalization. Every bound name must
/// occur in `table`.
pub fn substitute(
    e: &Expr,
    bindings: &BTreeMap<Symbol, Expr>,
    table: &SymbolTable,
) -> Result<Expr, Error> {
    let mut rb = BTreeMap::new();
    for (s, v) in bindings {
        if table.kind_of(s.name()).is_none() {
            return Err(Error::UnknownSymbol {
                name: s.name().to_string(),
                pos: None,
            });
        }
        rb.insert(s.clone(), v.to_ratfn()?);
    }
    let r = e.to_ratfn()?.substitute(&rb)?;
    Ok(Expr::from_ratfn_with(&r, &|s| table.classify(s)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> SymbolTable {
        SymbolTable::new(
            ["x", "y", "z"],
            ["a1", "a2", "a3", "b1", "b2", "b3", "c1", "c2", "c3"],
        )
    }

    fn p(s: &str) -> Expr {
        parse_expr(s, &table()).unwrap()
    }

    #[test]
    fn derivative_examples() {
        let y = Symbol::new("y");
        assert_eq!(differentiate(&p("1/y"), &y).unwrap().to_string(), "-1/y^2");
        assert_eq!(differentiate(&p("2/y^2"), &y).unwrap().to_string(), "-4/y^3");
        assert_eq!(
            differentiate(&p("a1"), &Symbol::new("x")).unwrap().to_string(),
            "0"
        );
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&p("y*(1/y)")).unwrap().to_string(), "1");
        assert!(is_identically_zero(&p(
            "(2*b3/y^2)*(4*a3/y^3) - (2*a3/y^2)*(4*b3/y^3)"
        ))
        .unwrap());
        assert_eq!(normalize(&p("x/x")).unwrap().to_string(), "1");
    }

    #[test]
    fn normalize_rejects_zero_denominator() {
        assert_eq!(normalize(&p("1/(y - y)")), Err(Error::DivisionByZero));
    }

    #[test]
    fn zero_test_examples() {
        assert!(is_identically_zero(&p("1/y - 1/y")).unwrap());
        assert!(!is_identically_zero(&p("2/y^2")).unwrap());
    }

    #[test]
    fn evaluate_examples() {
        let pt = Point::new().with("y", 2.0);
        assert_eq!(evaluate(&p("2/y^2"), &pt).unwrap(), 0.5);
        let pt0 = Point::new().with("y", 0.0);
        assert!(matches!(evaluate(&p("1/y"), &pt0), Err(Error::Domain(_))));
        let pt4 = Point::new().with("y", 4.0);
        assert_eq!(evaluate(&p("-2/y"), &pt4).unwrap(), -0.5);
    }

    #[test]
    fn substitute_examples() {
        let t = table();
        let mut b = BTreeMap::new();
        for (k, v) in [("a1", 1), ("b2", 1), ("a2", 0), ("b1", 0)] {
            b.insert(Symbol::new(k), Expr::int(v));
        }
        assert_eq!(
            substitute(&p("(a1*b2 - a2*b1)"), &b, &t).unwrap().to_string(),
            "1"
        );

        let mut id = BTreeMap::new();
        id.insert(Symbol::new("y"), p("y"));
        assert_eq!(substitute(&p("1/y"), &id, &t).unwrap(), normalize(&p("1/y")).unwrap());

        let mut b3 = BTreeMap::new();
        b3.insert(Symbol::new("b3"), Expr::int(0));
        let u1 = p("2*b3/y^2*(a1*b2 - a2*b1)");
        assert_eq!(substitute(&u1, &b3, &t).unwrap().to_string(), "0");

        let mut bad = BTreeMap::new();
        bad.insert(Symbol::new("w"), Expr::int(0));
        assert!(matches!(
            substitute(&u1, &bad, &t),
            Err(Error::UnknownSymbol { .. })
        ));
    }

    #[test]
    fn normalize_keeps_coordinate_tags() {
        let e = normalize(&p("x*a1/x")).unwrap();
        assert_eq!(e, Expr::Param(Symbol::new("a1")));
        let e = normalize(&p("x + a1 - a1")).unwrap();
        assert_eq!(e, Expr::Coord(Symbol::new("x")));
    }
}
