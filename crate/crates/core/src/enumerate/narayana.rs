//! Incomplete Narayana numbers `N_{n,k,ℓ}`: closed and open block counts of
//! INC(n), their recursion and generating-function identities.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{binom, counts, CountTable};
use crate::exact::{Param, PolyExpr, Rational, Series};
use crate::families::{FamilyError, FamilyId};
use crate::wick::Report;

pub fn narayana_table(n: usize) -> Result<CountTable, FamilyError> {
    counts(FamilyId::Inc, n)
}

fn big_to_poly(c: &BigInt) -> PolyExpr {
    PolyExpr::constant(Rational::from_integer(c.clone()))
}

/// `F(t, x, z)` to order `nmax + 1` from the enumerated tables.
fn gf(tables: &[CountTable]) -> Series {
    let t = PolyExpr::param(Param::T);
    let x = PolyExpr::param(Param::X);
    Series::new(
        tables
            .iter()
            .map(|tab| {
                tab.entries.iter().fold(PolyExpr::zero(), |acc, ((k, l), c)| {
                    &acc + &(&big_to_poly(c) * &(&t.pow(*k as u32) * &x.pow(*l as u32)))
                })
            })
            .collect(),
    )
}

/// Recursion for `N_{n+1,k,ℓ}`, the functional equation
/// `F = 1 + ztF + zxF + z(F − 1)F̃`, the quadratic for the ordinary Narayana
/// series `F̃`, and the rank and total generating functions, all to order
/// `nmax`.
pub fn verify_narayana(nmax: usize) -> Result<Report, FamilyError> {
    let tables: Vec<CountTable> = (0..=nmax).map(narayana_table).collect::<Result<_, _>>()?;
    let mut r = Report::new("INC", "narayana", "count").with_n(nmax);

    for n in 0..nmax {
        let (a, b) = (&tables[n], &tables[n + 1]);
        for k in 0..=n + 1 {
            for l in 0..=n + 1 {
                let mut want = BigInt::zero();
                if k > 0 {
                    want += a.get(k - 1, l);
                }
                if l > 0 {
                    want += a.get(k, l - 1);
                }
                for i in 1..=n {
                    for j in 0..=k {
                        want += tables[i].get(j, l) * tables[n - i].get(k - j, 0);
                    }
                }
                r.checked += 1;
                if b.get(k, l) != want {
                    r.fail(format!("N({},{k},{l}) = {} but the recursion gives {want}", n + 1, b.get(k, l)));
                }
            }
        }
    }

    let order = nmax + 1;
    let t = PolyExpr::param(Param::T);
    let x = PolyExpr::param(Param::X);
    let f = gf(&tables);
    let ft = f.map(|c| c.substitute(Param::X, &PolyExpr::zero()));
    let z = Series::z(order);
    let one = Series::one(order);

    let rhs = &(&(&one + &(&z * &f).scale(&t)) + &(&z * &f).scale(&x)) + &(&z * &(&(&f - &one) * &ft));
    compare(&mut r, "functional equation", &f, &rhs);

    // F (1 − z(t + x + F̃)) = 1 − z F̃
    let den = &one - &(&z * &(&Series::constant(&t + &x, order) + &ft));
    compare(&mut r, "closed form of F", &(&f * &den), &(&one - &(&z * &ft)));

    // The closed-form Narayana series G = (1 + z(t − 1) − √(1 − 2z(t + 1) + z²(t − 1)²)) / (2tz)
    // weights a partition by t^{#blocks − 1}, so G = 1 + (F̃ − 1)/t; in terms
    // of F̃ its quadratic t z G² − (1 + z(t − 1)) G + 1 = 0 reads
    // z (F̃ + t − 1)² − (1 + z(t − 1))(F̃ + t − 1) + t = 0.
    let g = &ft + &Series::constant(&t - &PolyExpr::one(), order);
    let a = &one + &z.scale(&(&t - &PolyExpr::one()));
    let quad = &(&(&z * &(&g * &g)) - &(&a * &g)) + &Series::constant(t.clone(), order);
    compare(&mut r, "Narayana quadratic", &quad, &Series::zero(order));

    // F(1, x, z) (1 − 2z(x + 1) + s) = 1 + s with s = √(1 − 4z)
    let f1 = f.map(|c| c.substitute(Param::T, &PolyExpr::one()));
    let s = (&one - &z.scale(&PolyExpr::int(4))).sqrt().expect("constant term 1");
    let den = &(&one - &z.scale(&(&x + &PolyExpr::one()).scale(&Rational::from_integer(2.into())))) + &s;
    compare(&mut r, "rank generating function", &(&f1 * &den), &(&one + &s));

    // F(1, 1, z) √(1 − 4z) = 1
    let f11 = f1.map(|c| c.substitute(Param::X, &PolyExpr::one()));
    compare(&mut r, "total generating function", &(&f11 * &s), &one);
    for (n, c) in f11.coeffs().iter().enumerate() {
        r.checked += 1;
        if *c != big_to_poly(&binom(2 * n, n)) {
            r.fail(format!("|INC({n})| = {c}"));
        }
    }
    Ok(r)
}

fn compare(r: &mut Report, what: &str, lhs: &Series, rhs: &Series) {
    for n in 0..lhs.order().min(rhs.order()) {
        r.checked += 1;
        if lhs.coeff(n) != rhs.coeff(n) {
            r.fail(format!("{what} at z^{n}: {} vs {}", lhs.coeff(n), rhs.coeff(n)));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_values() {
        let t1 = narayana_table(1).unwrap();
        assert_eq!(t1.get(0, 1), BigInt::from(1));
        assert_eq!(t1.get(1, 0), BigInt::from(1));
        assert_eq!(narayana_table(2).unwrap().total(), BigInt::from(6));
    }

    #[test]
    fn identities_to_six() {
        let r = verify_narayana(6).unwrap();
        assert!(r.pass, "{r}");
    }
}
