//! Expression trees, their conversion to canonical rational functions, and rendering.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::poly::{Monomial, Poly, Symbol};
use crate::ratfn::RatFn;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolKind {
    Coordinate,
    Parameter,
}

/// Symbolic scalar as written. Convert to [`RatFn`] for arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Num(BigRational),
    Coord(Symbol),
    Param(Symbol),
    Neg(Box<Expr>),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Quotient(Box<Expr>, Box<Expr>),
    Power(Box<Expr>, i32),
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Num(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn to_ratfn(&self) -> Result<RatFn, Error> {
        Ok(match self {
            Expr::Num(q) => RatFn::constant(q.clone()),
            Expr::Coord(s) | Expr::Param(s) => RatFn::symbol(s),
            Expr::Neg(e) => -e.to_ratfn()?,
            Expr::Sum(es) => {
                let mut acc = RatFn::zero();
                for e in es {
                    acc = &acc + &e.to_ratfn()?;
                }
                acc
            }
            Expr::Product(es) => {
                let mut acc = RatFn::one();
                for e in es {
                    acc = &acc * &e.to_ratfn()?;
                }
                acc
            }
            Expr::Quotient(n, d) => n.to_ratfn()?.checked_div(&d.to_ratfn()?)?,
            Expr::Power(b, k) => b.to_ratfn()?.pow(*k)?,
        })
    }

    /// Symbols appearing in the tree together with their kind.
    pub fn symbols(&self) -> BTreeMap<Symbol, SymbolKind> {
        let mut out = BTreeMap::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeMap<Symbol, SymbolKind>) {
        match self {
            Expr::Num(_) => {}
            Expr::Coord(s) => {
                out.insert(s.clone(), SymbolKind::Coordinate);
            }
            Expr::Param(s) => {
                out.insert(s.clone(), SymbolKind::Parameter);
            }
            Expr::Neg(e) | Expr::Power(e, _) => e.collect_symbols(out),
            Expr::Sum(es) | Expr::Product(es) => es.iter().for_each(|e| e.collect_symbols(out)),
            Expr::Quotient(n, d) => {
                n.collect_symbols(out);
                d.collect_symbols(out);
            }
        }
    }

    /// Canonical tree of a rational function. Symbols are tagged as parameters.
    pub fn from_ratfn(r: &RatFn) -> Expr {
        Expr::from_ratfn_with(r, &|_| SymbolKind::Parameter)
    }

    pub fn from_ratfn_with(r: &RatFn, kind: &dyn Fn(&Symbol) -> SymbolKind) -> Expr {
        let num = poly_tree(r.numer(), kind);
        if r.denom().is_one() {
            num
        } else {
            Expr::Quotient(Box::new(num), Box::new(poly_tree(r.denom(), kind)))
        }
    }

    pub fn from_poly(p: &Poly) -> Expr {
        poly_tree(p, &|_| SymbolKind::Parameter)
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Sum(_) => 1,
            Expr::Product(_) | Expr::Quotient(..) => 2,
            Expr::Num(q) if !q.is_integer() => 2,
            Expr::Neg(_) => 3,
            Expr::Num(q) if q.is_negative() => 3,
            Expr::Power(..) => 4,
            _ => 5,
        }
    }
}

fn symbol_tree(s: &Symbol, kind: &dyn Fn(&Symbol) -> SymbolKind) -> Expr {
    match kind(s) {
        SymbolKind::Coordinate => Expr::Coord(s.clone()),
        SymbolKind::Parameter => Expr::Param(s.clone()),
    }
}

fn monomial_factors(m: &Monomial, kind: &dyn Fn(&Symbol) -> SymbolKind) -> Vec<Expr> {
    m.factors()
        .iter()
        .map(|(v, e)| {
            let s = symbol_tree(v, kind);
            if *e == 1 {
                s
            } else {
                Expr::Power(Box::new(s), *e as i32)
            }
        })
        .collect()
}

/// Tree for a single term with a non-negative coefficient.
fn positive_term(c: &BigRational, m: &Monomial, kind: &dyn Fn(&Symbol) -> SymbolKind) -> Expr {
    let mut factors = monomial_factors(m, kind);
    if factors.is_empty() {
        return Expr::Num(c.clone());
    }
    if !c.is_one() {
        factors.insert(0, Expr::Num(c.clone()));
    }
    single_or_product(factors)
}

fn single_or_product(mut factors: Vec<Expr>) -> Expr {
    if factors.len() == 1 {
        factors.pop().expect("one factor")
    } else {
        Expr::Product(factors)
    }
}

/// Tree for a leading term, which may carry a negative coefficient.
fn leading_term(c: &BigRational, m: &Monomial, kind: &dyn Fn(&Symbol) -> SymbolKind) -> Expr {
    if !c.is_negative() {
        return positive_term(c, m, kind);
    }
    let mut factors = monomial_factors(m, kind);
    if factors.is_empty() || !(-c).is_one() {
        factors.insert(0, Expr::Num(c.clone()));
        return single_or_product(factors);
    }
    // Coefficient -1: negate the first factor so the tree renders as `-x*y`.
    let first = factors.remove(0);
    factors.insert(0, Expr::Neg(Box::new(first)));
    single_or_product(factors)
}

fn poly_tree(p: &Poly, kind: &dyn Fn(&Symbol) -> SymbolKind) -> Expr {
    let mut terms = Vec::with_capacity(p.num_terms());
    for (i, (m, c)) in p.terms_desc().enumerate() {
        if i == 0 {
            terms.push(leading_term(c, m, kind));
        } else if c.is_negative() {
            terms.push(Expr::Neg(Box::new(positive_term(&-c, m, kind))));
        } else {
            terms.push(positive_term(c, m, kind));
        }
    }
    match terms.len() {
        0 => Expr::Num(BigRational::zero()),
        1 => terms.pop().expect("one term"),
        _ => Expr::Sum(terms),
    }
}

fn write_num(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

fn write_wrapped(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Renders in the input grammar; `parse(render(parse(s))) == parse(s)`.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(q) => write_num(f, q),
            Expr::Coord(s) | Expr::Param(s) => write!(f, "{s}"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                write_wrapped(f, e, e.precedence() < 3)
            }
            Expr::Sum(terms) => {
                for (i, t) in terms.iter().enumerate() {
                    if i == 0 {
                        write_wrapped(f, t, matches!(t, Expr::Sum(_)))?;
                        continue;
                    }
                    match t {
                        Expr::Neg(inner) => {
                            f.write_str(" - ")?;
                            write_wrapped(f, inner, matches!(**inner, Expr::Sum(_)))?;
                        }
                        _ => {
                            f.write_str(" + ")?;
                            write_wrapped(f, t, matches!(t, Expr::Sum(_)))?;
                        }
                    }
                }
                Ok(())
            }
            Expr::Product(factors) => {
                for (i, t) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    let parens = match t {
                        Expr::Sum(_) | Expr::Product(_) => true,
                        Expr::Quotient(..) => i > 0,
                        Expr::Num(q) => i > 0 && !q.is_integer(),
                        _ => false,
                    };
                    write_wrapped(f, t, parens)?;
                }
                Ok(())
            }
            Expr::Quotient(n, d) => {
                write_wrapped(f, n, matches!(**n, Expr::Sum(_)))?;
                f.write_str("/")?;
                let parens = d.precedence() <= 2 || matches!(**d, Expr::Num(_));
                write_wrapped(f, d, parens)
            }
            Expr::Power(b, k) => {
                write_wrapped(f, b, b.precedence() < 5)?;
                write!(f, "^{k}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_render_of_inverse_square() {
        let r = RatFn::from_int(2) / RatFn::var("y").pow(2).unwrap();
        assert_eq!(Expr::from_ratfn(&r).to_string(), "2/y^2");
    }

    #[test]
    fn canonical_render_negative_leading() {
        let r = RatFn::from_int(-1) / RatFn::var("y");
        assert_eq!(r.to_string(), "-1/y");
        let s = &(&RatFn::var("a") * &RatFn::var("b")) - &RatFn::var("c");
        assert_eq!((-&s).to_string(), "-a*b + c");
    }

    #[test]
    fn fractional_coefficients_render_as_literals() {
        let r = RatFn::from_ratio(1, 2) * RatFn::var("x");
        assert_eq!(r.to_string(), "1/2*x");
        let r = RatFn::from_ratio(-3, 4) * RatFn::var("x");
        assert_eq!(r.to_string(), "-3/4*x");
    }

    #[test]
    fn multi_term_denominator_is_parenthesized() {
        let r = RatFn::one() / (&RatFn::var("x") + &RatFn::var("y"));
        assert_eq!(r.to_string(), "1/(x + y)");
        let r = RatFn::one() / (&RatFn::var("x") * &RatFn::var("y"));
        assert_eq!(r.to_string(), "1/(x*y)");
    }
}
