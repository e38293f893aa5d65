//! Published closed forms used as reference values by the verification
//! suites. Nothing in the computational pipeline reads from here.

use num_bigint::BigInt;

use super::tables::{factored_ell, spectral_constant};
use crate::algebra::{ratio, MultiPoly, Rational};
use crate::{Error, Result};

fn parse(s: &str) -> MultiPoly {
    s.parse().expect("reference entries are well formed")
}

/// `Delta = g2^3 - 27 g3^2`.
pub fn discriminant() -> MultiPoly {
    parse("g2^3 - 27*g3^2")
}

/// Printed leading constants `c_n^2` of the factored spectral polynomials.
/// For `n = 4, 5` these differ from the values consistent with `C^2 = l_n(B)`
/// by the factors `18^2` and `22^2`.
pub fn published_c_sq(n: u32) -> Result<Rational> {
    let pow = |b: i64, e: u32| b.pow(e);
    Ok(match n {
        1 => ratio(4, 1),
        2 => ratio(4, pow(3, 4)),
        3 => ratio(4, pow(3, 4) * pow(5, 4)),
        4 => ratio(1, pow(3, 8) * pow(5, 4) * pow(7, 4)),
        5 => ratio(1, pow(3, 12) * pow(5, 4) * pow(7, 4) * 121),
        _ => return Err(Error::Unsupported(format!("no published c_{n}"))),
    })
}

/// Spectral polynomial `l_n(B)` in its published form, `1 <= n <= 5`.
/// For `n = 4, 5` only the factored form is published; it is expanded with the
/// printed constant.
pub fn reference_ell(n: u32) -> Result<MultiPoly> {
    Ok(match n {
        1 => parse("4*B^3 - g2*B - g3"),
        2 => parse("4/81*B^5 - 7/27*g2*B^3 + 1/3*g3*B^2 + 1/3*g2^2*B - g2*g3"),
        3 => parse(
            "1/202500*B*(16*B^6 - 504*g2*B^4 + 2376*g3*B^3 + 4185*g2^2*B^2 \
             - 36450*g2*g3*B + 91125*g3^2 - 3375*g2^3)",
        ),
        4 | 5 => factored_ell(n)?.scale(&(published_c_sq(n)? / spectral_constant(n)?)),
        _ => return Err(Error::Unsupported(format!("no reference l_{n}"))),
    })
}

/// Published `s_2, ..., s_n` for `n = 2, 3`.
pub fn reference_spectral(n: u32) -> Result<Vec<MultiPoly>> {
    Ok(match n {
        2 => vec![parse("beta^2/36 + alpha^2/72 - g2/4")],
        3 => vec![
            parse("(4*beta^2 + alpha^2 - 150*g2)/600"),
            parse("(2*beta^3 + 3*alpha^2*beta - 120*beta*g2 + 900*g3)/3600"),
        ],
        _ => return Err(Error::Unsupported(format!("no reference s_k for n = {n}"))),
    })
}

/// `(F1, F0)` for `n = 2, 3`, the coefficients of `x` and `1` in `L4 q`.
///
/// The printed equations are the same up to the sign of the whole equation
/// except for the `g2` term of `F1` at `n = 3`, printed as `+60 g2`; see
/// [`printed_consistency`].
pub fn reference_consistency(n: u32) -> Result<(MultiPoly, MultiPoly)> {
    Ok(match n {
        2 => (
            parse("-alpha^2*beta/6"),
            parse("alpha^2*(beta^2/36 + alpha^2/72 - g2/6)"),
        ),
        3 => (
            parse("alpha^2*(4*beta^2 + alpha^2 - 60*g2)/600"),
            parse("-alpha^2*(2*beta^3 + 3*alpha^2*beta - 90*beta*g2 + 540*g3)/3600"),
        ),
        _ => return Err(Error::Unsupported(format!("no reference F for n = {n}"))),
    })
}

/// The compatibility equations `F1 = 0`, `F0 = 0` as printed, `n = 2, 3`.
pub fn printed_consistency(n: u32) -> Result<(MultiPoly, MultiPoly)> {
    Ok(match n {
        2 => (
            parse("alpha^2*beta/6"),
            parse("alpha^2*(beta^2/36 + alpha^2/72 - g2/6)"),
        ),
        3 => (
            parse("alpha^2*(4*beta^2 + alpha^2 + 60*g2)/600"),
            parse("alpha^2*(2*beta^3 + 3*alpha^2*beta - 90*beta*g2 + 540*g3)/3600"),
        ),
        _ => return Err(Error::Unsupported(format!("no printed F for n = {n}"))),
    })
}

/// Published elimination inputs `(f, g)` for `n = 2, 3`.
pub fn reference_fg(n: u32) -> Result<(MultiPoly, MultiPoly)> {
    Ok(match n {
        2 => (
            parse("B^3 - 9*x0*B^2 + 27*(g2*x0 + g3)"),
            parse("z*B^3 - 9*y0*B^2 - 9*z*g2*B + 27*(g2*y0 - 2*z*g3)"),
        ),
        3 => (
            parse(
                "16*B^6 - 576*B^5*x0 + 360*B^4*g2 + 5400*B^3*(5*g3 + 4*g2*x0) \
                 - 3375*B^2*g2^2 - 84375*(g2^3 - 27*g3^2) - 101250*B*g2*(3*g3 + 2*g2*x0)",
            ),
            parse(
                "16*B^6*z - 1440*B^5*y0 - 1800*B^4*g2*z + 54000*B^3*(g2*y0 - g3*z) \
                 - 16875*B^2*g2^2*z - 506250*B*g2^2*y0 + 421875*(g2^3 - 27*g3^2)*z",
            ),
        ),
        _ => return Err(Error::Unsupported(format!("no reference f, g for n = {n}"))),
    })
}

/// Published minimal polynomial `W_n(z)`, `1 <= n <= 4`.
pub fn reference_wn(n: u32) -> Result<MultiPoly> {
    Ok(match n {
        1 => parse("z"),
        2 => parse("z^3 - 3*x0*z - y0"),
        3 => parse(
            "z^6 - 15*x0*z^4 - 20*y0*z^3 + (27/4*g2 - 45*x0^2)*z^2 - 12*x0*y0*z - 5/4*y0^2",
        ),
        4 => w4_with_linear_term("y0"),
        _ => return Err(Error::Unsupported(format!("no reference W_{n}"))),
    })
}

/// The restatement of `W_4` whose `z`-linear term carries `x0` where the main
/// statement has `y0`.
pub fn w4_alternate() -> MultiPoly {
    w4_with_linear_term("x0")
}

fn w4_with_linear_term(factor: &str) -> MultiPoly {
    parse(&format!(
        "z^10 - 45*x0*z^8 - 120*y0*z^7 + (399/4*g2 - 630*x0^2)*z^6 - 504*x0*y0*z^5 \
         - 15/4*(280*x0^3 - 49*g2*x0 - 115*g3)*z^4 + 15*(11*g2 - 24*x0^2)*y0*z^3 \
         - 9/4*(140*x0^4 - 245*g2*x0^2 + 190*g3*x0 + 21*g2^2)*z^2 \
         - (40*x0^3 - 163*g2*x0 + 125*g3)*{factor}*z + 3/4*(25*g2 - 3*x0^2)*y0^2"
    ))
}

/// Published scale factor `lambda_n` with `Res_B(f, g) = lambda_n W_n`,
/// `n = 2, 3, 4`.
pub fn reference_lambda(n: u32) -> Result<MultiPoly> {
    let pow = |b: u32, e: u32| BigInt::from(b).pow(e);
    let (c, delta_exp, y0_exp) = match n {
        2 => (-pow(3, 9), 1, 2),
        3 => (pow(2, 36) * pow(3, 27) * pow(5, 30), 5, 4),
        4 => (-(pow(2, 80) * pow(3, 63) * pow(5, 60) * pow(7, 63)), 18, 8),
        _ => return Err(Error::Unsupported(format!("no reference lambda_{n}"))),
    };
    let y0 = MultiPoly::var(crate::algebra::Var::Y0);
    Ok((&discriminant().pow(delta_exp) * &y0.pow(y0_exp)).scale(&Rational::from_integer(c)))
}
