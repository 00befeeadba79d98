//! Exact short-vector enumeration and representation counting.
//!
//! The enumerator LLL-reduces the Gram matrix, takes an exact LDL
//! decomposition and walks the Fincke-Pohst tree with all comparisons done
//! on integers: the rational completed-square data is cleared to a common
//! denominator once, so the inner loop is checked i128 arithmetic. Counting
//! representations of a half-integral index matrix reduces to inner-product
//! bookkeeping on the stored shells.

use std::collections::BTreeMap;

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{bigint, Rational};
use crate::fourier::{FourierExpansion, IndexMatrix};
use crate::lattices::Lattice;
use crate::linalg::{int_to_rat, ldl, lll_gram, IntMat};

/// Hard limits on the enumeration tree and on stored vectors.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_stored: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: 10_000_000_000, max_stored: 50_000_000 }
    }
}

/// Vectors of each even norm up to `max_norm`, in the original basis.
/// In count-only mode the shells are empty and only the counts are kept.
#[derive(Debug)]
pub struct ShellTable {
    max_norm: i64,
    stored: bool,
    shells: BTreeMap<i64, Vec<Vec<i64>>>,
    counts: BTreeMap<i64, u64>,
}

impl ShellTable {
    pub fn max_norm(&self) -> i64 {
        self.max_norm
    }

    /// Number of lattice vectors of the given norm (norm 0 counts the zero
    /// vector once).
    pub fn count(&self, norm: i64) -> Result<u64> {
        if norm == 0 {
            return Ok(1);
        }
        if norm < 0 || norm > self.max_norm {
            return Err(Error::InsufficientCoverage(format!(
                "norm {norm} beyond enumerated bound {}",
                self.max_norm
            )));
        }
        Ok(*self.counts.get(&norm).unwrap_or(&0))
    }

    pub fn vectors(&self, norm: i64) -> Result<&[Vec<i64>]> {
        if !self.stored {
            return Err(Error::InsufficientCoverage(
                "shell table was built in count-only mode".to_string(),
            ));
        }
        if norm <= 0 || norm > self.max_norm {
            return Err(Error::InsufficientCoverage(format!(
                "norm {norm} beyond enumerated bound {}",
                self.max_norm
            )));
        }
        Ok(self.shells.get(&norm).map_or(&[], |v| v.as_slice()))
    }
}

fn to_i128(v: &BigInt, what: &str) -> Result<i128> {
    num::ToPrimitive::to_i128(v)
        .ok_or_else(|| Error::EnumerationOverflow(format!("{what} does not fit in i128")))
}

struct Prepared {
    n: usize,
    /// Exact square coefficients d_j / lden_j^2 of the completed squares.
    coeff: Vec<Rational>,
    /// f64 shadows of `coeff` for fast range estimates.
    coeff_f: Vec<f64>,
    /// Row-cleared L entries: l[j][k] = lnum[j][k] / lden[j] for k > j.
    lnum: Vec<Vec<i128>>,
    lden: Vec<i128>,
    /// Change of basis back to the original coordinates.
    basis: Vec<Vec<i64>>,
}

fn prepare(gram: &IntMat) -> Result<Prepared> {
    let n = gram.len();
    let (u, w) = lll_gram(gram);
    let (d, l) = ldl(&int_to_rat(&w)).ok_or(Error::NotPositiveDefinite)?;

    let mut lden_big = vec![BigInt::one(); n];
    for j in 0..n {
        for k in j + 1..n {
            lden_big[j] = num::Integer::lcm(&lden_big[j], l[j][k].denom());
        }
    }
    let mut coeff = Vec::with_capacity(n);
    let mut coeff_f = Vec::with_capacity(n);
    let mut lnum = vec![vec![0i128; n]; n];
    let mut lden = Vec::with_capacity(n);
    for j in 0..n {
        let ld2 = Rational::from(&lden_big[j] * &lden_big[j]);
        let c = &d[j] / ld2;
        coeff_f.push(rational_to_f64(&c));
        coeff.push(c);
        lden.push(to_i128(&lden_big[j], "row denominator")?);
        for k in j + 1..n {
            let v = l[j][k].numer() * (&lden_big[j] / l[j][k].denom());
            lnum[j][k] = to_i128(&v, "L entry")?;
        }
    }
    let basis = u
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| num::ToPrimitive::to_i64(x).expect("LLL basis entry fits i64"))
                .collect()
        })
        .collect();
    Ok(Prepared { n, coeff, coeff_f, lnum, lden, basis })
}

fn rational_to_f64(r: &Rational) -> f64 {
    num::ToPrimitive::to_f64(r).expect("rational fits in f64 range")
}

struct Walker<'a> {
    p: &'a Prepared,
    budget: Budget,
    store: bool,
    nodes: u64,
    stored: u64,
    x: Vec<i64>,
    shells: BTreeMap<i64, Vec<Vec<i64>>>,
    counts: BTreeMap<i64, u64>,
}

impl Walker<'_> {
    fn descend(
        &mut self,
        j: usize,
        remaining: &Rational,
        acc: &Rational,
        zeros_above: bool,
    ) -> Result<()> {
        let p = self.p;
        let coeff = &p.coeff[j];
        let mut cnum: i128 = 0;
        for k in j + 1..p.n {
            cnum = cnum
                .checked_add(
                    p.lnum[j][k]
                        .checked_mul(self.x[k] as i128)
                        .ok_or_else(overflow)?,
                )
                .ok_or_else(overflow)?;
        }
        // Largest r with coeff * r^2 <= remaining, estimated in floating
        // point and fixed up with exact comparisons at the boundary.
        let rem_f = rational_to_f64(remaining);
        let mut r = (rem_f / p.coeff_f[j]).sqrt() as i128 + 1;
        let sq = |v: i128| coeff * Rational::from(BigInt::from(v * v));
        while r > 0 && sq(r) > *remaining {
            r -= 1;
        }
        while sq(r + 1) <= *remaining {
            r += 1;
        }
        let ld = p.lden[j];
        let lo = (-r - cnum).div_euclid(ld) + i128::from((-r - cnum).rem_euclid(ld) != 0);
        let hi = (r - cnum).div_euclid(ld);
        let lo = if zeros_above { lo.max(0) } else { lo };
        for xv in lo..=hi {
            self.nodes += 1;
            if self.nodes > self.budget.max_nodes {
                return Err(Error::BudgetExceeded(format!(
                    "enumeration tree exceeded {} nodes",
                    self.budget.max_nodes
                )));
            }
            let y = xv * ld + cnum;
            let term = sq(y);
            debug_assert!(term <= *remaining);
            let zeros = zeros_above && xv == 0;
            self.x[j] = xv as i64;
            if j == 0 {
                if !zeros {
                    self.record(acc + term)?;
                }
            } else {
                self.descend(j - 1, &(remaining - &term), &(acc + term), zeros)?;
            }
        }
        self.x[j] = 0;
        Ok(())
    }

    fn record(&mut self, norm_rat: Rational) -> Result<()> {
        let p = self.p;
        debug_assert!(norm_rat.is_integer());
        let norm = num::ToPrimitive::to_i64(&norm_rat.to_integer()).expect("norm fits i64");
        if norm == 0 {
            return Ok(());
        }
        // The walk visits one vector per +-pair (highest nonzero
        // coordinate positive); both signs are accounted for.
        *self.counts.entry(norm).or_insert(0) += 2;
        if self.store {
            self.stored += 2;
            if self.stored > self.budget.max_stored {
                return Err(Error::BudgetExceeded(format!(
                    "stored vectors exceeded {}",
                    self.budget.max_stored
                )));
            }
            let mut v = vec![0i64; p.n];
            for (j, &xj) in self.x.iter().enumerate() {
                if xj != 0 {
                    for (vi, &bji) in v.iter_mut().zip(&p.basis[j]) {
                        *vi += xj * bji;
                    }
                }
            }
            let neg = v.iter().map(|a| -a).collect();
            let shell = self.shells.entry(norm).or_default();
            shell.push(v);
            shell.push(neg);
        }
        Ok(())
    }
}

fn overflow() -> Error {
    Error::EnumerationOverflow("i128 arithmetic overflowed".to_string())
}

/// Enumerate all lattice vectors of norm at most `max_norm` (an even
/// bound). With `store` false only per-norm counts are collected.
pub fn short_vectors(
    gram: &IntMat,
    max_norm: i64,
    store: bool,
    budget: &Budget,
) -> Result<ShellTable> {
    assert!(max_norm >= 0);
    let p = prepare(gram)?;
    let mut w = Walker {
        p: &p,
        budget: *budget,
        store,
        nodes: 0,
        stored: 0,
        x: vec![0; p.n],
        shells: BTreeMap::new(),
        counts: BTreeMap::new(),
    };
    if max_norm > 0 {
        let full = Rational::from(BigInt::from(max_norm));
        w.descend(p.n - 1, &full, &Rational::zero(), true)?;
    }
    Ok(ShellTable {
        max_norm,
        stored: store,
        shells: w.shells,
        counts: w.counts,
    })
}

/// Number of roots (norm-2 vectors) of a lattice.
pub fn root_count(lattice: &Lattice, budget: &Budget) -> Result<u64> {
    short_vectors(&lattice.gram, 2, false, budget)?.count(2)
}

/// Representation counting against a fixed shell table.
pub struct RepCounter {
    gram: Vec<Vec<i64>>,
    table: ShellTable,
    /// Per-norm cache of G v for every stored shell vector.
    gv: BTreeMap<i64, Vec<Vec<i64>>>,
    /// Root-shell adjacency bitsets keyed by inner product in -2..=2.
    adjacency: Option<Vec<[Vec<u64>; 5]>>,
}

impl RepCounter {
    pub fn new(lattice: &Lattice, table: ShellTable) -> Self {
        let gram = lattice
            .gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| num::ToPrimitive::to_i64(x).expect("Gram entry fits i64"))
                    .collect()
            })
            .collect();
        RepCounter { gram, table, gv: BTreeMap::new(), adjacency: None }
    }

    pub fn table(&self) -> &ShellTable {
        &self.table
    }

    fn gv_shell(&mut self, norm: i64) -> Result<()> {
        if self.gv.contains_key(&norm) {
            return Ok(());
        }
        let vs = self.table.vectors(norm)?;
        let gram = &self.gram;
        let cache: Vec<Vec<i64>> = vs
            .iter()
            .map(|v| {
                gram.iter()
                    .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
                    .collect()
            })
            .collect();
        self.gv.insert(norm, cache);
        Ok(())
    }

    fn build_adjacency(&mut self) -> Result<()> {
        if self.adjacency.is_some() {
            return Ok(());
        }
        self.gv_shell(2)?;
        let roots = self.table.vectors(2)?;
        let gv = &self.gv[&2];
        let n = roots.len();
        let words = n.div_ceil(64);
        let mut adj = vec![[(); 5].map(|_| vec![0u64; words]); n];
        for i in 0..n {
            for (j, root) in roots.iter().enumerate() {
                let ip: i64 = gv[i].iter().zip(root).map(|(a, b)| a * b).sum();
                debug_assert!((-2..=2).contains(&ip), "root inner product out of range");
                adj[i][(ip + 2) as usize][j / 64] |= 1 << (j % 64);
            }
        }
        self.adjacency = Some(adj);
        Ok(())
    }

    /// a(theta; T): the number of integral matrices X with S[X] = 2T.
    pub fn count(&mut self, t: &IndexMatrix) -> Result<BigInt> {
        // Zero diagonal entries force zero columns; drop them.
        let n = t.degree as usize;
        let two_t = t.two_t();
        if !t.is_psd() {
            return Ok(BigInt::zero());
        }
        let active: Vec<usize> = (0..n).filter(|&i| two_t[i][i] != 0).collect();
        for &i in &active {
            for j in 0..n {
                if two_t[j][j] == 0 {
                    debug_assert_eq!(two_t[i][j], 0, "psd index with nonzero mixed entry");
                }
            }
        }
        let norms: Vec<i64> = active.iter().map(|&i| two_t[i][i]).collect();
        let ips: Vec<Vec<i64>> = active
            .iter()
            .map(|&i| active.iter().map(|&j| two_t[i][j]).collect())
            .collect();
        match active.len() {
            0 => Ok(BigInt::one()),
            1 => Ok(BigInt::from(self.table.count(norms[0])?)),
            2 => self.count_pairs(norms[0], norms[1], ips[0][1]),
            3 => self.count_triples(&norms, &ips),
            _ => unreachable!("degree is at most 3"),
        }
    }

    fn count_pairs(&mut self, a: i64, b: i64, ip: i64) -> Result<BigInt> {
        self.gv_shell(a)?;
        let second = self.table.vectors(b)?;
        let gv = &self.gv[&a];
        let mut acc: u64 = 0;
        for gvi in gv {
            for w in second {
                let dot: i64 = gvi.iter().zip(w).map(|(x, y)| x * y).sum();
                acc += u64::from(dot == ip);
            }
        }
        Ok(BigInt::from(acc))
    }

    fn count_triples(&mut self, norms: &[i64], ips: &[Vec<i64>]) -> Result<BigInt> {
        if norms == [2, 2, 2] {
            return self.count_root_triples(ips[0][1], ips[0][2], ips[1][2]);
        }
        // Generic small-shell fallback (binary forms and the like).
        self.gv_shell(norms[0])?;
        self.gv_shell(norms[1])?;
        let s0 = self.table.vectors(norms[0])?;
        let s1 = self.table.vectors(norms[1])?;
        let s2 = self.table.vectors(norms[2])?;
        let gv0 = &self.gv[&norms[0]];
        let gv1 = &self.gv[&norms[1]];
        let mut acc: u64 = 0;
        for i in 0..s0.len() {
            for j in 0..s1.len() {
                let d01: i64 = gv0[i].iter().zip(&s1[j]).map(|(x, y)| x * y).sum();
                if d01 != ips[0][1] {
                    continue;
                }
                for w in s2 {
                    let d02: i64 = gv0[i].iter().zip(w).map(|(x, y)| x * y).sum();
                    if d02 != ips[0][2] {
                        continue;
                    }
                    let d12: i64 = gv1[j].iter().zip(w).map(|(x, y)| x * y).sum();
                    acc += u64::from(d12 == ips[1][2]);
                }
            }
        }
        Ok(BigInt::from(acc))
    }

    fn count_root_triples(&mut self, b12: i64, b13: i64, b23: i64) -> Result<BigInt> {
        self.build_adjacency()?;
        let adj = self.adjacency.as_ref().unwrap();
        let a12 = (b12 + 2) as usize;
        let a13 = (b13 + 2) as usize;
        let a23 = (b23 + 2) as usize;
        let mut acc: u64 = 0;
        for (i, masks) in adj.iter().enumerate() {
            let row = &masks[a12];
            for (w, &bits) in row.iter().enumerate() {
                let mut bits = bits;
                while bits != 0 {
                    let j = w * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    acc += adj[i][a13]
                        .iter()
                        .zip(&adj[j][a23])
                        .map(|(x, y)| (x & y).count_ones() as u64)
                        .sum::<u64>();
                }
            }
        }
        Ok(BigInt::from(acc))
    }
}

/// Fourier expansion of the degree-n theta series of a lattice over the
/// given box, by direct enumeration. Weight is rank/2.
pub fn theta_expansion(
    lattice: &Lattice,
    degree: u8,
    box_: &[IndexMatrix],
    budget: &Budget,
) -> Result<FourierExpansion> {
    let max_t = box_.iter().map(|t| t.diag.iter().max().copied().unwrap()).max().unwrap_or(0);
    let store = box_.iter().any(|t| (0..3).filter(|&i| t.diag[i] != 0).count() >= 2);
    let table = short_vectors(&lattice.gram, 2 * max_t, store, budget)?;
    let weight = lattice.rank() as i64 / 2;
    if !store {
        let entries = box_
            .iter()
            .map(|t| {
                let norm = 2 * t.diag.iter().sum::<i64>();
                let count = if t.rank() == 0 {
                    1
                } else {
                    // Degree-reduced: exactly one nonzero diagonal entry.
                    table.count(norm)?
                };
                Ok((*t, num::BigRational::from(bigint(count as i64))))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(FourierExpansion::from_entries(degree, weight, entries));
    }
    let mut counter = RepCounter::new(lattice, table);
    let entries = box_
        .iter()
        .map(|t| Ok((*t, num::BigRational::from(counter.count(t)?))))
        .collect::<Result<Vec<_>>>()?;
    Ok(FourierExpansion::from_entries(degree, weight, entries))
}
