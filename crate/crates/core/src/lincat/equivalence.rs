//! Certificates that a functor is (or is not) an equivalence on finite lists of objects.

use serde::Serialize;

use crate::error::Result;
use crate::lincat::category::{find_iso, iso_invariants, Category, Iso};
use crate::lincat::envelope::Obj;
use crate::lincat::functor::Functor;
use crate::matrix::Matrix;
use crate::search::{Budget, Search};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EssentialImage {
    /// The target object is isomorphic to the image of source object `source`.
    Hit { source: usize, iso: Iso },
    /// No listed source maps to an object isomorphic to the target; the reason is certified.
    Miss(String),
    /// The searches did not finish within budget.
    Unknown { tried: u64 },
}

impl EssentialImage {
    pub fn is_hit(&self) -> bool {
        matches!(self, EssentialImage::Hit { .. })
    }

    pub fn is_miss(&self) -> bool {
        matches!(self, EssentialImage::Miss(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Equivalence,
    NotEquivalence,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceCertificate {
    pub pairs_checked: usize,
    /// Source pairs `(i, j)` on which the functor is not injective on Hom.
    pub not_faithful: Vec<(usize, usize)>,
    /// Source pairs `(i, j)` on which the functor is not surjective on Hom.
    pub not_full: Vec<(usize, usize)>,
    pub essential: Vec<EssentialImage>,
}

impl EquivalenceCertificate {
    pub fn fully_faithful(&self) -> bool {
        self.not_faithful.is_empty() && self.not_full.is_empty()
    }

    pub fn verdict(&self) -> Verdict {
        if !self.fully_faithful() || self.essential.iter().any(EssentialImage::is_miss) {
            Verdict::NotEquivalence
        } else if self.essential.iter().all(EssentialImage::is_hit) {
            Verdict::Equivalence
        } else {
            Verdict::Undetermined
        }
    }

    /// Indices of targets that are certified not to be in the essential image.
    pub fn misses(&self) -> Vec<usize> {
        (0..self.essential.len()).filter(|&i| self.essential[i].is_miss()).collect()
    }

    pub fn summary(&self) -> serde_json::Value {
        serde_json::json!({
            "verdict": self.verdict(),
            "pairs_checked": self.pairs_checked,
            "not_faithful": self.not_faithful,
            "not_full": self.not_full,
            "hits": self.essential.iter().filter(|e| e.is_hit()).count(),
            "misses": self.misses(),
            "essential": self.essential,
            "unknown": self.essential.iter().filter(|e| matches!(e, EssentialImage::Unknown { .. })).count(),
        })
    }
}

/// Rank of the functor on `Hom(x, y)`, compared with the dimensions on both sides.
pub fn hom_rank(
    functor: &dyn Functor,
    src: &dyn Category,
    tgt: &dyn Category,
    x: &Obj,
    y: &Obj,
) -> Result<(usize, usize, usize)> {
    let basis = src.hom_basis(x, y)?;
    let (fx, fy) = (functor.map_obj(x)?, functor.map_obj(y)?);
    let tdim = tgt.hom_dim(&fx, &fy)?;
    if basis.is_empty() {
        return Ok((0, 0, tdim));
    }
    let cols: Vec<Vec<_>> = basis
        .iter()
        .map(|f| functor.map_mor(x, y, f).map(|m| m.coords))
        .collect::<Result<_>>()?;
    let rows = cols[0].len();
    let rank = Matrix::from_columns(src.field(), rows, &cols).rank();
    Ok((rank, basis.len(), tdim))
}

/// Checks full faithfulness on all pairs of `sources`, and for every target searches for a
/// source whose image is isomorphic to it.
pub fn check_equivalence(
    functor: &dyn Functor,
    src: &dyn Category,
    tgt: &dyn Category,
    sources: &[Obj],
    targets: &[Obj],
    budget: Budget,
    seed: u64,
) -> Result<EquivalenceCertificate> {
    let mut cert = EquivalenceCertificate {
        pairs_checked: 0,
        not_faithful: Vec::new(),
        not_full: Vec::new(),
        essential: Vec::new(),
    };
    for (i, x) in sources.iter().enumerate() {
        for (j, y) in sources.iter().enumerate() {
            let (rank, sdim, tdim) = hom_rank(functor, src, tgt, x, y)?;
            cert.pairs_checked += 1;
            if rank < sdim {
                cert.not_faithful.push((i, j));
            }
            if rank < tdim {
                cert.not_full.push((i, j));
            }
        }
    }
    let images: Vec<Obj> = sources.iter().map(|s| functor.map_obj(s)).collect::<Result<_>>()?;
    for t in targets {
        let mut outcome = None;
        let mut tried = 0;
        let mut reasons = Vec::new();
        for (s, img) in images.iter().enumerate() {
            match find_iso(tgt, img, t, budget, seed.wrapping_add(s as u64))? {
                Search::Found(iso) => {
                    outcome = Some(EssentialImage::Hit { source: s, iso });
                    break;
                }
                Search::NoneFound(r) => reasons.push(format!("source {s}: {r}")),
                Search::BudgetExceeded { tried: t } => tried += t.max(1),
            }
        }
        cert.essential.push(match outcome {
            Some(hit) => hit,
            None if tried == 0 => EssentialImage::Miss(if reasons.is_empty() {
                "no sources".into()
            } else {
                reasons.join("; ")
            }),
            None => EssentialImage::Unknown { tried },
        });
    }
    Ok(cert)
}

/// Whether two objects could be isomorphic, judged by Hom dimensions only.
pub fn dimensions_compatible(c: &dyn Category, x: &Obj, y: &Obj) -> Result<bool> {
    let d = iso_invariants(c, x, y)?;
    Ok(d.iter().all(|&v| v == d[0]))
}
