//! Degree-1 and degree-2 Siegel-Eisenstein series, the discriminant cusp
//! form, and the degree-2 Igusa forms X12, Y12.
//!
//! Degree-2 rank-2 coefficients go through Cohen's H function. The overall
//! normalization constant c_k of the rank-2 part is not copied from the
//! literature: c_4 is solved from one enumerated coefficient of the E8
//! theta series, and c_6, c_12 from the requirement that the Igusa Y12
//! combination reproduces its classical expansion line. This calibrates the
//! entire analytic pipeline against exact lattice counts.

use std::collections::HashMap;
use std::sync::Mutex;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{
    bernoulli, bigint, divisor_sum, divisors, fundamental_decomposition,
    generalized_bernoulli, int, kronecker_symbol, moebius, rat, Rational,
};
use crate::fourier::{diag_box, FourierExpansion, IndexMatrix};

static H_CACHE: Mutex<Option<HashMap<(u32, u64), Rational>>> = Mutex::new(None);

/// Cohen's H(r, N).
pub fn cohen_h(r: u32, n: u64) -> Result<Rational> {
    assert!(r >= 1);
    {
        let cache = H_CACHE.lock().unwrap();
        if let Some(map) = cache.as_ref() {
            if let Some(v) = map.get(&(r, n)) {
                return Ok(v.clone());
            }
        }
    }
    let value = compute_cohen_h(r, n)?;
    let mut cache = H_CACHE.lock().unwrap();
    cache
        .get_or_insert_with(HashMap::new)
        .insert((r, n), value.clone());
    Ok(value)
}

fn compute_cohen_h(r: u32, n: u64) -> Result<Rational> {
    if n == 0 {
        // zeta(1 - 2r)
        return Ok(-bernoulli(2 * r) / rat(2 * r as i64, 1));
    }
    let signed = if r % 2 == 1 { -(n as i64) } else { n as i64 };
    if !matches!(signed.rem_euclid(4), 0 | 1) {
        return Ok(Rational::zero());
    }
    let (d, f) = fundamental_decomposition(signed).ok_or_else(|| {
        Error::Consistency(format!("no fundamental decomposition for {signed}"))
    })?;
    let l_value = -generalized_bernoulli(r, d)? / rat(r as i64, 1);
    let mut sum = Rational::zero();
    for div in divisors(f) {
        let mu = moebius(div);
        if mu == 0 {
            continue;
        }
        let chi = kronecker_symbol(d, div as i64);
        if chi == 0 {
            continue;
        }
        let sign = int((mu * chi) as i64);
        let power = bigint(div as i64).pow(r - 1);
        sum += sign * Rational::from(power * divisor_sum(f / div, 2 * r - 1));
    }
    Ok(l_value * sum)
}

/// -2k / B_k, the coefficient multiplier of the degree-1 Eisenstein series.
fn eis_factor(k: u32) -> Rational {
    rat(-2 * k as i64, 1) / bernoulli(k)
}

/// Degree-1 Eisenstein series E_k up to q^max_n.
pub fn eisenstein_deg1(k: u32, max_n: i64) -> FourierExpansion {
    assert!(k >= 4 && k % 2 == 0);
    let factor = eis_factor(k);
    let entries = (0..=max_n).map(|m| {
        let t = IndexMatrix::d1(m);
        let a = if m == 0 {
            Rational::one()
        } else {
            &factor * Rational::from(divisor_sum(m as u64, k - 1))
        };
        (t, a)
    });
    FourierExpansion::from_entries(1, k as i64, entries)
}

/// The discriminant cusp form, computed as ((E4)^3 - (E6)^2) / 1728.
pub fn delta_deg1(max_n: i64) -> Result<FourierExpansion> {
    let box_: Vec<IndexMatrix> = (0..=max_n).map(IndexMatrix::d1).collect();
    let e4 = eisenstein_deg1(4, max_n);
    let e6 = eisenstein_deg1(6, max_n);
    let e4cubed = e4.multiply(&e4, &box_)?.multiply(&e4, &box_)?;
    let e6sq = e6.multiply(&e6, &box_)?;
    let delta = FourierExpansion::linear_combination(&[
        (rat(1, 1728), &e4cubed),
        (rat(-1, 1728), &e6sq),
    ])?;
    if let Err((t, v)) = delta.all_integral() {
        return Err(Error::NonIntegralCoefficient { t, value: v.to_string() });
    }
    Ok(delta)
}

/// Content gcd(t11, t22, b12) of a nonzero degree-2 index.
fn content2(t: &IndexMatrix) -> u64 {
    let g = num::Integer::gcd(&t.diag[0], &num::Integer::gcd(&t.diag[1], &t.off[0]));
    g.unsigned_abs()
}

/// Sum over d | content of d^{k-1} H(k-1, det(2T)/d^2) for rank-2 T.
fn h_sum(k: u32, t: &IndexMatrix) -> Result<Rational> {
    let det = t.det_two_t();
    assert!(det > 0);
    let mut acc = Rational::zero();
    for d in divisors(content2(t)) {
        let n = det as u64 / (d * d);
        let h = cohen_h(k - 1, n)?;
        acc += Rational::from(bigint(d as i64).pow(k - 1)) * h;
    }
    Ok(acc)
}

/// Degree-2 Eisenstein coefficient with an explicit rank-2 normalization.
fn eis2_coefficient(k: u32, c_k: &Rational, t: &IndexMatrix) -> Result<Rational> {
    match t.rank() {
        0 => Ok(Rational::one()),
        1 => Ok(eis_factor(k) * Rational::from(divisor_sum(content2(t), k - 1))),
        _ => Ok(c_k * h_sum(k, t)?),
    }
}

fn eisenstein_deg2(k: u32, c_k: &Rational, box_: &[IndexMatrix]) -> Result<FourierExpansion> {
    let entries = box_
        .iter()
        .map(|t| Ok((*t, eis2_coefficient(k, c_k, t)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(FourierExpansion::from_entries(2, k as i64, entries))
}

/// The rational combinations defining the Igusa weight-12 generators in
/// terms of (E4)^3, (E6)^2 and E12.
fn igusa_x_constants() -> [Rational; 3] {
    let denom = |a: i64, b: i64, c: i64, d: i64| {
        bigint(2).pow(a as u32)
            * bigint(3).pow(b as u32)
            * bigint(5).pow(c as u32)
            * bigint(7).pow(d as u32)
            * bigint(337)
    };
    [
        Rational::new(bigint(131 * 593), denom(11, 4, 3, 0)),
        Rational::new(bigint(131 * 593), denom(10, 6, 0, 2)),
        Rational::new(bigint(-131 * 593) * bigint(691), denom(11, 6, 3, 2)),
    ]
}

fn igusa_y_constants() -> [Rational; 3] {
    let denom = |a: i64, b: i64, c: i64, d: i64| {
        bigint(2).pow(a as u32)
            * bigint(3).pow(b as u32)
            * bigint(5).pow(c as u32)
            * bigint(7).pow(d as u32)
            * bigint(337)
    };
    [
        Rational::new(bigint(41 * 71 * 109), denom(7, 3, 3, 0)),
        Rational::new(bigint(1759), denom(2, 4, 0, 2)),
        Rational::new(bigint(-131 * 593) * bigint(691), denom(7, 4, 3, 2)),
    ]
}

/// All degree-2 weight-12 building blocks on a diagonal-bounded box.
pub struct Deg2Pipeline {
    box_: Vec<IndexMatrix>,
    pub e4: FourierExpansion,
    pub e6: FourierExpansion,
    pub e12: FourierExpansion,
    pub e4cubed: FourierExpansion,
    pub x12: FourierExpansion,
    pub y12: FourierExpansion,
    pub c4: Rational,
    pub c6: Rational,
    pub c12: Rational,
}

impl Deg2Pipeline {
    /// Build the pipeline on the box of all psd indices with diagonal
    /// entries at most `max_tii`. `e8_pair_anchor` is the enumerated
    /// coefficient a(theta_E8^(2); [1,1,1]) used to calibrate c_4.
    pub fn new(max_tii: i64, e8_pair_anchor: &Rational) -> Result<Self> {
        let box_ = diag_box(2, max_tii);

        // c_4 from the E8 anchor: theta_E8^(2) = E_4^(2), and [1,1,1] is
        // rank 2 with content 1, so the anchor equals c_4 H(3, 3).
        let t111 = IndexMatrix::d2(1, 1, 1);
        let t101 = IndexMatrix::d2(1, 0, 1);
        let h33 = cohen_h(3, 3)?;
        if h33.is_zero() {
            return Err(Error::Consistency("H(3,3) vanished".to_string()));
        }
        let c4 = e8_pair_anchor / &h33;
        let e4 = eisenstein_deg2(4, &c4, &box_)?;
        let e4cubed = e4.multiply(&e4, &box_)?.multiply(&e4, &box_)?;

        // c_6 and c_12 from the classical Y12 expansion line
        // 116 q12^{-1} + 1206 + 116 q12 at diagonal (1,1): two linear
        // equations. At these indices the square (E6)^2 is linear in c_6
        // because no decomposition uses two rank-2 pieces, so finite
        // differences in c_6 recover the exact linear form.
        let [_, b2, b3] = igusa_y_constants();
        let a_of = |f: &FourierExpansion, t: &IndexMatrix| f.get(t).cloned();
        let e6_at = |c: &Rational, t: &IndexMatrix| -> Result<Rational> {
            let e6 = eisenstein_deg2(6, c, &box_)?;
            a_of(&e6.multiply(&e6, &box_)?, t)
        };
        let conv0_111 = e6_at(&Rational::zero(), &t111)?;
        let conv0_101 = e6_at(&Rational::zero(), &t101)?;
        let slope_111 = e6_at(&Rational::one(), &t111)? - &conv0_111;
        let slope_101 = e6_at(&Rational::one(), &t101)? - &conv0_101;
        let [y1, y2, y3] = igusa_y_constants();
        let target_111 = int(116)
            - &y1 * a_of(&e4cubed, &t111)?
            - &y2 * &conv0_111;
        let target_101 = int(1206)
            - &y1 * a_of(&e4cubed, &t101)?
            - &y2 * &conv0_101;
        // [b2*slope, b3*h12] [c6, c12]^T = target, at both anchors.
        let m11 = &b2 * &slope_111;
        let m12 = &b3 * h_sum(12, &t111)?;
        let m21 = &b2 * &slope_101;
        let m22 = &b3 * h_sum(12, &t101)?;
        let det = &m11 * &m22 - &m12 * &m21;
        if det.is_zero() {
            return Err(Error::Consistency(
                "degenerate c_6/c_12 calibration system".to_string(),
            ));
        }
        let c6 = (&m22 * &target_111 - &m12 * &target_101) / &det;
        let c12 = (&m11 * &target_101 - &m21 * &target_111) / &det;

        let e6 = eisenstein_deg2(6, &c6, &box_)?;
        let e12 = eisenstein_deg2(12, &c12, &box_)?;
        let e6sq = e6.multiply(&e6, &box_)?;
        let [a1, a2, a3] = igusa_x_constants();
        let x12 = FourierExpansion::linear_combination(&[
            (a1, &e4cubed),
            (a2, &e6sq),
            (a3, &e12),
        ])?;
        let y12 = FourierExpansion::linear_combination(&[
            (y1, &e4cubed),
            (y2, &e6sq),
            (y3, &e12),
        ])?;
        for (name, f) in [("X12", &x12), ("Y12", &y12)] {
            if let Err((t, v)) = f.all_integral() {
                return Err(Error::Consistency(format!(
                    "{name} has non-integral coefficient {v} at {t}"
                )));
            }
        }
        Ok(Deg2Pipeline {
            box_,
            e4,
            e6,
            e12,
            e4cubed,
            x12,
            y12,
            c4,
            c6,
            c12,
        })
    }

    pub fn covered_box(&self) -> &[IndexMatrix] {
        &self.box_
    }
}

/// The enumerated E8 anchor a(theta_E8^(2); [1,1,1]).
pub fn e8_pair_anchor() -> Result<Rational> {
    use crate::enumeration::{short_vectors, Budget, RepCounter};
    use crate::lattices::{Component, Lattice};
    let e8 = Lattice {
        name: "E8".to_string(),
        symbol: "E8".to_string(),
        gram: Component::E(8).cartan(),
        coxeter_number: 30,
    };
    let table = short_vectors(&e8.gram, 2, true, &Budget::default())?;
    let mut counter = RepCounter::new(&e8, table);
    Ok(Rational::from(counter.count(&IndexMatrix::d2(1, 1, 1))?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;

    /// Hurwitz class number oracle: weighted count of reduced positive
    /// binary quadratic forms of discriminant -N.
    fn hurwitz_oracle(n: i64) -> Rational {
        let mut acc = Rational::zero();
        for a in 1..=n {
            for b in -a..=a {
                if (b * b + n) % (4 * a) != 0 {
                    continue;
                }
                let c = (b * b + n) / (4 * a);
                if c < a {
                    continue;
                }
                // Reduced: |b| <= a <= c, with b >= 0 when |b| = a or a = c.
                if (b == -a) || (a == c && b < 0) {
                    continue;
                }
                let weight = if a == b && b == c {
                    rat(1, 3)
                } else if a == c && b == 0 {
                    rat(1, 2)
                } else {
                    Rational::one()
                };
                acc += weight;
            }
        }
        acc
    }

    #[test]
    fn cohen_h_weight_one_matches_hurwitz_oracle() {
        for n in 1..=40u64 {
            let h = cohen_h(1, n).unwrap();
            if (-(n as i64)).rem_euclid(4) > 1 {
                assert!(h.is_zero(), "H(1,{n}) should vanish");
            } else {
                assert_eq!(h, hurwitz_oracle(n as i64), "H(1,{n})");
            }
        }
    }

    #[test]
    fn cohen_h_small_values() {
        assert_eq!(cohen_h(1, 3).unwrap(), rat(1, 3));
        assert_eq!(cohen_h(1, 4).unwrap(), rat(1, 2));
        assert_eq!(cohen_h(11, 0).unwrap(), rat(-854513, 3036));
        assert_eq!(cohen_h(3, 3).unwrap(), rat(-2, 9));
    }

    #[test]
    fn deg1_eisenstein_leading_coefficients() {
        assert_eq!(*eisenstein_deg1(4, 2).get(&IndexMatrix::d1(1)).unwrap(), int(240));
        assert_eq!(*eisenstein_deg1(6, 2).get(&IndexMatrix::d1(1)).unwrap(), int(-504));
        assert_eq!(
            *eisenstein_deg1(12, 2).get(&IndexMatrix::d1(1)).unwrap(),
            rat(65520, 691)
        );
    }

    #[test]
    fn delta_expansion() {
        let d = delta_deg1(4).unwrap();
        assert_eq!(*d.get(&IndexMatrix::d1(0)).unwrap(), int(0));
        assert_eq!(*d.get(&IndexMatrix::d1(1)).unwrap(), int(1));
        assert_eq!(*d.get(&IndexMatrix::d1(2)).unwrap(), int(-24));
        assert_eq!(*d.get(&IndexMatrix::d1(3)).unwrap(), int(252));
        assert_eq!(*d.get(&IndexMatrix::d1(4)).unwrap(), int(-1472));
    }

    #[test]
    fn pipeline_calibration_and_igusa_values() {
        let anchor = e8_pair_anchor().unwrap();
        assert_eq!(anchor, int(13440));
        let p = Deg2Pipeline::new(2, &anchor).unwrap();
        assert_eq!(p.c4, int(-60480));
        // Y12 expansion line and its neighbours.
        assert_eq!(*p.y12.get(&IndexMatrix::d2(1, 0, 0)).unwrap(), int(1));
        assert_eq!(*p.y12.get(&IndexMatrix::d2(1, 1, 1)).unwrap(), int(116));
        assert_eq!(*p.y12.get(&IndexMatrix::d2(1, 0, 1)).unwrap(), int(1206));
        assert_eq!(*p.y12.get(&IndexMatrix::d2(2, 0, 0)).unwrap(), int(-24));
        assert_eq!(*p.x12.get(&IndexMatrix::d2(1, 1, 1)).unwrap(), int(1));
        assert_eq!(*p.x12.get(&IndexMatrix::d2(1, 0, 0)).unwrap(), int(0));
    }

    #[test]
    fn siegel_operator_compatibility() {
        let anchor = e8_pair_anchor().unwrap();
        let p = Deg2Pipeline::new(2, &anchor).unwrap();
        for (k, f) in [(4u32, &p.e4), (6, &p.e6), (12, &p.e12)] {
            let phi = f.siegel_operator().unwrap();
            let line = eisenstein_deg1(k, 2);
            for m in 0..=2 {
                let t = IndexMatrix::d1(m);
                assert_eq!(phi.get(&t).unwrap(), line.get(&t).unwrap(), "k={k} m={m}");
            }
        }
    }

    #[test]
    fn e4_squared_cube_matches_enumerated_gamma_theta() {
        use crate::enumeration::{theta_expansion, Budget};
        use crate::fourier::sturm_box;
        use crate::lattices::{build, catalog_entry};
        let anchor = e8_pair_anchor().unwrap();
        let p = Deg2Pipeline::new(1, &anchor).unwrap();
        let gamma = build(&catalog_entry("gamma").unwrap()).unwrap();
        let box_ = sturm_box(2, 12);
        let theta = theta_expansion(&gamma, 2, &box_, &Budget::default()).unwrap();
        for t in &box_ {
            assert_eq!(
                p.e4cubed.get(t).unwrap(),
                theta.get(t).unwrap(),
                "mismatch at {t}"
            );
        }
    }
}
