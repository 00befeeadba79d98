//! Weight-12 structure of the Niemeier theta series: the coefficient
//! polynomials c0, c1, c2 in the Coxeter number, the exact solve that
//! recovers the degree-3 generators Y12, X12 and the cusp form F12 from
//! four theta series, closed-form theta expressions in degrees 1-3, the
//! Lagrange interpolation corollary, and the symbolic rederivation of c1
//! and c2 from diagonal-restriction constants.

use num::{BigInt, One, Zero};

use crate::eisenstein::{delta_deg1, eisenstein_deg1, Deg2Pipeline};
use crate::error::{Error, Result};
use crate::exactmath::{int, Rational};
use crate::fourier::{FourierExpansion, IndexMatrix};
use crate::linalg::solve_rat;

/// Dense univariate polynomial with exact rational coefficients,
/// ascending degree order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(pub Vec<Rational>);

impl Poly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn eval(&self, h: i64) -> Rational {
        let x = int(h);
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let zero = Rational::zero();
        Poly(
            (0..n)
                .map(|i| {
                    self.0.get(i).unwrap_or(&zero) + other.0.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly(self.0.iter().map(|x| x * c).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&int(-1)))
    }

    fn trimmed(&self) -> Vec<Rational> {
        let mut v = self.0.clone();
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        v
    }

    pub fn equals(&self, other: &Poly) -> bool {
        self.trimmed() == other.trimmed()
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}h"),
                _ => format!("{c}h^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}

/// c0(h) = 24(h - 30).
pub fn c0_poly() -> Poly {
    Poly::from_i64(&[-720, 24])
}

/// c1(h) = 48(h - 30)^2 = 48h^2 - 2880h + 43200.
pub fn c1_poly() -> Poly {
    Poly::from_i64(&[43200, -2880, 48])
}

/// c2(h) = 24(h - 30)(2h^2 + 48h + 1571) = 48h^3 - 288h^2 + 3144h - 1131120.
pub fn c2_poly() -> Poly {
    Poly::from_i64(&[-1131120, 3144, -288, 48])
}

/// The three coefficient polynomials evaluated at h.
pub fn coefficient_polynomials(h: i64) -> (BigInt, BigInt, BigInt) {
    let ev = |p: Poly| p.eval(h).to_integer();
    (ev(c0_poly()), ev(c1_poly()), ev(c2_poly()))
}

/// Degree-3 weight-12 generators recovered from theta series.
pub struct Degree3Basis {
    pub e4cubed: FourierExpansion,
    pub y12: FourierExpansion,
    pub x12: FourierExpansion,
    pub f12: FourierExpansion,
}

/// Solve (Y12, X12, F12) per index from the theta series of the lattices
/// with h = 30 (pinning (E4)^3), 0, 2 and 46.
pub fn solve_degree3_basis(
    theta_gamma: &FourierExpansion,
    theta_omega: &FourierExpansion,
    theta_psi: &FourierExpansion,
    theta_alpha: &FourierExpansion,
) -> Result<Degree3Basis> {
    let anchors = [(0i64, theta_omega), (2, theta_psi), (46, theta_alpha)];
    let m: Vec<Vec<Rational>> = anchors
        .iter()
        .map(|(h, _)| {
            let (c0, c1, c2) = coefficient_polynomials(*h);
            vec![Rational::from(c0), Rational::from(c1), Rational::from(c2)]
        })
        .collect();
    let mut y = Vec::new();
    let mut x = Vec::new();
    let mut f = Vec::new();
    for t in theta_gamma.covered() {
        let base = theta_gamma.get(t)?;
        let rhs: Vec<Vec<Rational>> = anchors
            .iter()
            .map(|(_, th)| Ok(vec![th.get(t)? - base]))
            .collect::<Result<_>>()?;
        let sol = solve_rat(&m, &rhs).ok_or_else(|| {
            Error::Consistency("degree-3 anchor system is singular".to_string())
        })?;
        y.push((*t, sol[0][0].clone()));
        x.push((*t, sol[1][0].clone()));
        f.push((*t, sol[2][0].clone()));
    }
    let degree = theta_gamma.degree();
    let mk = |entries: Vec<(IndexMatrix, Rational)>| {
        FourierExpansion::from_entries(degree, 12, entries)
    };
    let basis = Degree3Basis {
        e4cubed: theta_gamma.with_weight(12),
        y12: mk(y),
        x12: mk(x),
        f12: mk(f),
    };
    for (name, form) in [("Y12", &basis.y12), ("X12", &basis.x12), ("F12", &basis.f12)] {
        if let Err((t, v)) = form.all_integral() {
            return Err(Error::Consistency(format!(
                "solved {name} has non-integral coefficient {v} at {t}"
            )));
        }
    }
    Ok(basis)
}

/// Degree-1 theta expression (E4)^3 + (24h - 720) Delta up to q^max_n.
pub fn theta1_via_formula(h: i64, max_n: i64) -> Result<FourierExpansion> {
    let box_: Vec<IndexMatrix> = (0..=max_n).map(IndexMatrix::d1).collect();
    let e4 = eisenstein_deg1(4, max_n);
    let e4cubed = e4.multiply(&e4, &box_)?.multiply(&e4, &box_)?;
    let delta = delta_deg1(max_n)?;
    FourierExpansion::linear_combination(&[
        (Rational::one(), &e4cubed),
        (Rational::from(c0_poly().eval(h)), &delta),
    ])
}

/// Degree-2 theta expression (E4)^3 + c0(h) Y12 + c1(h) X12 on the
/// pipeline's box; reaches indices far beyond enumeration.
pub fn theta2_via_formula(h: i64, pipeline: &Deg2Pipeline) -> Result<FourierExpansion> {
    let (c0, c1, _) = coefficient_polynomials(h);
    FourierExpansion::linear_combination(&[
        (Rational::one(), &pipeline.e4cubed),
        (Rational::from(c0), &pipeline.y12),
        (Rational::from(c1), &pipeline.x12),
    ])
}

/// Degree-3 theta expression (E4)^3 + c0 Y + c1 X + c2 F on `box_`.
pub fn theta3_via_formula(
    h: i64,
    basis: &Degree3Basis,
    box_: &[IndexMatrix],
) -> Result<FourierExpansion> {
    let (c0, c1, c2) = coefficient_polynomials(h);
    FourierExpansion::linear_combination(&[
        (Rational::one(), &basis.e4cubed),
        (Rational::from(c0), &basis.y12),
        (Rational::from(c1), &basis.x12),
        (Rational::from(c2), &basis.f12),
    ])?
    .restrict(box_)
}

/// Lagrange reconstruction: sum of l_j(h) theta_j over four anchors with
/// pairwise distinct Coxeter numbers.
pub fn lagrange_reconstruct(
    h: i64,
    anchors: &[(i64, &FourierExpansion)],
) -> Result<FourierExpansion> {
    for (i, (hi, _)) in anchors.iter().enumerate() {
        for (hj, _) in &anchors[i + 1..] {
            if hi == hj {
                return Err(Error::RepeatedNode(*hi));
            }
        }
    }
    let terms: Vec<(Rational, &FourierExpansion)> = anchors
        .iter()
        .map(|(hj, f)| {
            let mut num = Rational::one();
            let mut den = Rational::one();
            for (hi, _) in anchors {
                if hi != hj {
                    num *= int(h - hi);
                    den *= int(hj - hi);
                }
            }
            (num / den, *f)
        })
        .collect();
    FourierExpansion::linear_combination(&terms)
}

/// Diagonal-restriction constants of the weight-12 generators, needed by
/// the symbolic rederivation of c1 and c2.
pub struct RestrictionConstants {
    pub deg2: [Rational; 3],
    pub deg3: [Rational; 4],
}

pub fn restriction_constants(
    pipeline: &Deg2Pipeline,
    basis: &Degree3Basis,
) -> Result<RestrictionConstants> {
    let d2 = [1, 1];
    let d3 = [1, 1, 1];
    Ok(RestrictionConstants {
        deg2: [
            pipeline.e4cubed.diagonal_restriction_coeff(&d2)?,
            pipeline.y12.diagonal_restriction_coeff(&d2)?,
            pipeline.x12.diagonal_restriction_coeff(&d2)?,
        ],
        deg3: [
            basis.e4cubed.diagonal_restriction_coeff(&d3)?,
            basis.y12.diagonal_restriction_coeff(&d3)?,
            basis.x12.diagonal_restriction_coeff(&d3)?,
            basis.f12.diagonal_restriction_coeff(&d3)?,
        ],
    })
}

/// Rederive c1 and c2 symbolically: the diagonal restriction of a theta
/// series factors through lower degree, so comparing the coefficient of
/// q_11 ... q_nn on both sides of the degree-n expression gives
///   (24h)^2 = E + c0(h) Y' + c1(h) X'          (degree 2)
///   (24h)^3 = E3 + c0 Y3' + c1 X3' + c2 F3'     (degree 3)
/// with the primed restriction constants; solve each for the top unknown.
pub fn rederive_c_coefficients(k: &RestrictionConstants) -> Result<(Poly, Poly)> {
    let lhs2 = Poly::from_i64(&[0, 0, 576]); // (24h)^2
    let lhs3 = Poly::from_i64(&[0, 0, 0, 13824]); // (24h)^3
    let [e2, y2, x2] = &k.deg2;
    if x2.is_zero() {
        return Err(Error::Consistency("degree-2 X restriction vanished".to_string()));
    }
    let c1 = lhs2
        .sub(&Poly(vec![e2.clone()]))
        .sub(&c0_poly().scale(y2))
        .scale(&(Rational::one() / x2));
    let [e3, y3, x3, f3] = &k.deg3;
    if f3.is_zero() {
        return Err(Error::Consistency("degree-3 F restriction vanished".to_string()));
    }
    let c2 = lhs3
        .sub(&Poly(vec![e3.clone()]))
        .sub(&c0_poly().scale(y3))
        .sub(&c1.scale(x3))
        .scale(&(Rational::one() / f3));
    if !c1.equals(&c1_poly()) || !c2.equals(&c2_poly()) {
        return Err(Error::Consistency(format!(
            "rederived coefficient polynomials disagree: c1 = {c1}, c2 = {c2}"
        )));
    }
    Ok((c1, c2))
}
