//! Shared computation context: lazily built lattices, enumerated theta
//! expansions (optionally disk-cached), the degree-2 Eisenstein pipeline
//! and the degree-3 weight-12 basis. Everything downstream (verification,
//! CLI, exports) funnels through here so each expensive object is built
//! once per process.

use std::collections::HashMap;
use std::path::Path;

use crate::cache::CoeffCache;
use crate::eisenstein::{e8_pair_anchor, Deg2Pipeline};
use crate::enumeration::{theta_expansion, Budget};
use crate::error::{Error, Result};
use crate::forms3::{
    solve_degree3_basis, theta1_via_formula, theta2_via_formula, theta3_via_formula,
    Degree3Basis,
};
use crate::fourier::{diag_box, sturm_box, FourierExpansion, IndexMatrix};
use crate::lattices::{binary_form, build, catalog, catalog_entry, CatalogEntry, Lattice};

/// All theta series are weight 12 for certification purposes; the two
/// binary quadratic forms of determinant 23 are carried at this effective
/// weight so their Sturm boxes line up with the Niemeier series they are
/// compared against.
pub const WEIGHT: i64 = 12;

/// Diagonal bound for the extended degree-2 boxes (witness indices such
/// as [1,1,6] and [3,1,2] live well beyond the Sturm box).
pub const EXTENDED_DIAG: i64 = 6;

pub struct Context {
    budget: Budget,
    cache: Option<CoeffCache>,
    thetas: HashMap<(String, u8), FourierExpansion>,
    pipeline: Option<Deg2Pipeline>,
    basis: Option<Degree3Basis>,
}

impl Default for Context {
    fn default() -> Self {
        Self::new()
    }
}

/// Parse a binary-form identifier "[a,b,c]" (brackets optional).
fn parse_binary_name(name: &str) -> Option<(i64, i64, i64)> {
    let inner = name.trim().trim_start_matches('[').trim_end_matches(']');
    let parts: Vec<i64> = inner.split(',').map(|p| p.trim().parse().ok()).collect::<Option<_>>()?;
    match parts[..] {
        [a, b, c] => Some((a, b, c)),
        _ => None,
    }
}

impl Context {
    pub fn new() -> Self {
        Context {
            budget: Budget::default(),
            cache: None,
            thetas: HashMap::new(),
            pipeline: None,
            basis: None,
        }
    }

    /// Attach a disk cache directory; previously cached coefficients are
    /// served without re-enumeration.
    pub fn with_cache(dir: &Path) -> Result<Self> {
        let mut ctx = Self::new();
        ctx.cache = Some(CoeffCache::open(dir)?);
        Ok(ctx)
    }

    pub fn set_budget(&mut self, budget: Budget) {
        self.budget = budget;
    }

    pub fn catalog(&self) -> Vec<CatalogEntry> {
        catalog()
    }

    /// Resolve a form identifier: a Niemeier name/symbol or "[a,b,c]".
    pub fn lattice(&self, name: &str) -> Result<Lattice> {
        if let Some((a, b, c)) = parse_binary_name(name) {
            return binary_form(a, b, c);
        }
        build(&catalog_entry(name)?)
    }

    pub fn coxeter_number(&self, name: &str) -> Result<i64> {
        Ok(catalog_entry(name)?.coxeter_number)
    }

    /// Enumerated theta expansion on the weight-12 Sturm box of the given
    /// degree, at effective weight 12.
    pub fn theta(&mut self, name: &str, degree: u8) -> Result<FourierExpansion> {
        let box_ = sturm_box(degree, WEIGHT);
        self.theta_on(name, degree, &box_)
    }

    /// Enumerated theta expansion on the diagonal box t_ii <= max_tii
    /// (the Sturm box when `max_tii` is None).
    pub fn theta_boxed(
        &mut self,
        name: &str,
        degree: u8,
        max_tii: Option<i64>,
    ) -> Result<FourierExpansion> {
        match max_tii {
            None => self.theta(name, degree),
            Some(n) => self.theta_on(name, degree, &diag_box(degree, n)),
        }
    }

    fn theta_on(
        &mut self,
        name: &str,
        degree: u8,
        box_: &[IndexMatrix],
    ) -> Result<FourierExpansion> {
        let key = (name.to_string(), degree);
        if let Some(f) = self.thetas.get(&key) {
            if box_.iter().all(|t| f.get(t).is_ok()) {
                return f.restrict(box_);
            }
        }
        if let Some(cache) = &self.cache {
            if let Some(f) = cache.expansion(name, degree, WEIGHT, box_) {
                self.thetas.insert(key, f.clone());
                return Ok(f);
            }
        }
        let lat = self.lattice(name)?;
        let f = theta_expansion(&lat, degree, box_, &self.budget)?.with_weight(WEIGHT);
        if let Some(cache) = &mut self.cache {
            cache.insert_expansion(name, &f);
        }
        self.thetas.insert(key, f.clone());
        Ok(f)
    }

    /// The calibrated degree-2 Eisenstein pipeline on the extended box.
    pub fn pipeline(&mut self) -> Result<&Deg2Pipeline> {
        if self.pipeline.is_none() {
            let anchor = e8_pair_anchor()?;
            self.pipeline = Some(Deg2Pipeline::new(EXTENDED_DIAG, &anchor)?);
        }
        Ok(self.pipeline.as_ref().unwrap())
    }

    /// The degree-3 weight-12 basis solved from four theta expansions.
    pub fn basis(&mut self) -> Result<&Degree3Basis> {
        if self.basis.is_none() {
            let gamma = self.theta("gamma", 3)?;
            let omega = self.theta("omega", 3)?;
            let psi = self.theta("psi", 3)?;
            let alpha = self.theta("alpha", 3)?;
            self.basis = Some(solve_degree3_basis(&gamma, &omega, &psi, &alpha)?);
        }
        Ok(self.basis.as_ref().unwrap())
    }

    /// Closed-form theta expression for the Niemeier lattice `name` at the
    /// given degree (degree 1 and 2 reach beyond the Sturm box).
    pub fn formula_theta(&mut self, name: &str, degree: u8) -> Result<FourierExpansion> {
        let h = self.coxeter_number(name)?;
        match degree {
            1 => theta1_via_formula(h, EXTENDED_DIAG),
            2 => {
                let p = self.pipeline()?;
                theta2_via_formula(h, p)
            }
            3 => {
                let box_ = sturm_box(3, WEIGHT);
                self.basis()?;
                theta3_via_formula(h, self.basis.as_ref().unwrap(), &box_)
            }
            d => Err(Error::Consistency(format!("unsupported degree {d}"))),
        }
    }

    /// Degree-3 expansion extended by all rank <= 2 indices embedded from
    /// the extended degree-2 box: rank-3 coefficients come from direct
    /// enumeration on the Sturm box, embedded rank <= 2 coefficients from
    /// the certified degree-2 expression (for binary forms, from direct
    /// enumeration, which stays cheap in two dimensions). This is the box
    /// on which singular-rank and kernel witnesses live.
    pub fn extended_theta3(&mut self, name: &str) -> Result<FourierExpansion> {
        let mut box_ = sturm_box(3, WEIGHT);
        let embedded: Vec<IndexMatrix> = diag_box(2, EXTENDED_DIAG)
            .into_iter()
            .map(|t| t.extend_zero())
            .collect();
        if parse_binary_name(name).is_some() {
            box_.extend(embedded);
            box_.sort();
            box_.dedup();
            return self.theta_on(name, 3, &box_);
        }
        let base = self.theta(name, 3)?;
        let deg2 = self.formula_theta(name, 2)?;
        let mut entries: Vec<(IndexMatrix, _)> =
            base.entries().map(|(t, v)| (*t, v.clone())).collect();
        for t in embedded {
            if base.get(&t).is_err() {
                let flat = IndexMatrix::d2(t.diag[0], t.off[0], t.diag[1]);
                entries.push((t, deg2.get(&flat)?.clone()));
            }
        }
        Ok(FourierExpansion::from_entries(3, WEIGHT, entries))
    }

    /// Flush the disk cache, if one is attached.
    pub fn flush_cache(&mut self) -> Result<()> {
        match &mut self.cache {
            Some(c) => c.flush(),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;

    #[test]
    fn binary_names_parse() {
        assert_eq!(parse_binary_name("[4,2,6]"), Some((4, 2, 6)));
        assert_eq!(parse_binary_name("2,2,12"), Some((2, 2, 12)));
        assert_eq!(parse_binary_name("delta"), None);
    }

    #[test]
    fn theta_is_memoized_and_cached_on_disk() {
        let dir = tempfile::tempdir().unwrap();
        let t = IndexMatrix::d2(1, 1, 1);
        {
            let mut ctx = Context::with_cache(dir.path()).unwrap();
            let f = ctx.theta("delta", 2).unwrap();
            assert_eq!(*f.get(&t).unwrap(), int(27600));
            ctx.flush_cache().unwrap();
        }
        // Second context reads the same value straight from disk.
        let mut ctx = Context::with_cache(dir.path()).unwrap();
        let f = ctx.theta("delta", 2).unwrap();
        assert_eq!(*f.get(&t).unwrap(), int(27600));
    }

    #[test]
    fn extended_theta3_agrees_with_siegel_operator() {
        let mut ctx = Context::new();
        let ext = ctx.extended_theta3("psi").unwrap();
        // The embedded [1,1,6] witness index is covered...
        let t = IndexMatrix::d3(1, 6, 0, 0, 0, 1);
        assert!(ext.get(&t).is_ok());
        // ...and embedded values match the degree-2 expression.
        let deg2 = ctx.formula_theta("psi", 2).unwrap();
        assert_eq!(
            ext.get(&t).unwrap(),
            deg2.get(&IndexMatrix::d2(1, 1, 6)).unwrap()
        );
    }
}
