//! The additive envelope: formal direct sums of presented objects and block-matrix morphisms.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::field::{Field, Scalar};
use crate::lincat::presentation::Presentation;

/// A morphism between formal sums. Coordinates are laid out block by block: for each target
/// summand `j` (outer) and each source summand `i` (inner), the coordinates of the component
/// in `hom(src[i], tgt[j])`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Mor {
    pub field: Field,
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    pub coords: Vec<Scalar>,
}

/// Objects of every category built by this crate. The innermost layer is always a formal sum
/// of presented objects, and every morphism is a [`Mor`] between those sums.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Obj {
    Sum(Vec<usize>),
    /// An object of the idempotent completion: an object with an idempotent endomorphism.
    Retract(Box<Obj>, Mor),
    /// An object with equivariant structure `θ_g : F → φ_g F`, one per group element.
    Equivariant(Box<Obj>, Vec<Mor>),
    /// An object with coaction `c → T c`.
    Comodule(Box<Obj>, Mor),
    /// An object with action `S b → b`.
    Module(Box<Obj>, Mor),
}

impl Obj {
    pub fn base(xs: &[usize]) -> Obj {
        Obj::Sum(xs.to_vec())
    }

    pub fn zero() -> Obj {
        Obj::Sum(Vec::new())
    }

    /// The formal sum at the bottom of the tower.
    pub fn underlying(&self) -> &[usize] {
        match self {
            Obj::Sum(xs) => xs,
            Obj::Retract(x, _)
            | Obj::Equivariant(x, _)
            | Obj::Comodule(x, _)
            | Obj::Module(x, _) => x.underlying(),
        }
    }

    /// The object one layer down, if any.
    pub fn inner(&self) -> Option<&Obj> {
        match self {
            Obj::Sum(_) => None,
            Obj::Retract(x, _)
            | Obj::Equivariant(x, _)
            | Obj::Comodule(x, _)
            | Obj::Module(x, _) => Some(x),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Obj::Sum(_) => "sum",
            Obj::Retract(..) => "retract",
            Obj::Equivariant(..) => "equivariant",
            Obj::Comodule(..) => "comodule",
            Obj::Module(..) => "module",
        }
    }
}

impl fmt::Debug for Mor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "{:?}->{:?}[{}]", self.src, self.tgt, c.join(" "))
    }
}

impl fmt::Debug for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obj::Sum(xs) => write!(f, "{xs:?}"),
            Obj::Retract(x, p) => write!(f, "({x:?}, p={p:?})"),
            Obj::Equivariant(x, t) => write!(f, "({x:?}, θ={t:?})"),
            Obj::Comodule(x, h) => write!(f, "({x:?}, coact={h:?})"),
            Obj::Module(x, a) => write!(f, "({x:?}, act={a:?})"),
        }
    }
}

impl Mor {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    fn check_parallel(&self, other: &Mor) {
        assert!(
            self.src == other.src && self.tgt == other.tgt,
            "morphisms are not parallel: {self:?} vs {other:?}"
        );
    }

    pub fn add(&self, other: &Mor) -> Mor {
        self.check_parallel(other);
        Mor {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Mor) -> Mor {
        self.check_parallel(other);
        Mor {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, s: &Scalar) -> Mor {
        Mor {
            coords: self.coords.iter().map(|a| a * s).collect(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Mor {
        Mor {
            coords: self.coords.iter().map(|a| -a).collect(),
            ..self.clone()
        }
    }
}

/// Linear combination `Σ c_i m_i` of parallel morphisms (at least one must be given).
pub fn combination(coeffs: &[Scalar], mors: &[Mor]) -> Mor {
    assert_eq!(coeffs.len(), mors.len());
    let first = &mors[0];
    let mut coords = vec![first.field.zero(); first.coords.len()];
    for (c, m) in coeffs.iter().zip(mors) {
        if c.is_zero() {
            continue;
        }
        for (acc, x) in coords.iter_mut().zip(&m.coords) {
            if !x.is_zero() {
                *acc = &*acc + &(c * x);
            }
        }
    }
    Mor {
        coords,
        ..first.clone()
    }
}

/// The additive envelope of a presentation.
#[derive(Clone, Debug)]
pub struct Envelope {
    pres: Arc<Presentation>,
}

impl Envelope {
    pub fn new(pres: Arc<Presentation>) -> Self {
        Envelope { pres }
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn field(&self) -> Field {
        self.pres.field()
    }

    fn offsets(&self, src: &[usize], tgt: &[usize]) -> Vec<usize> {
        let mut off = Vec::with_capacity(src.len() * tgt.len() + 1);
        let mut acc = 0;
        for &b in tgt {
            for &a in src {
                off.push(acc);
                acc += self.pres.dim(a, b);
            }
        }
        off.push(acc);
        off
    }

    pub fn hom_dim(&self, src: &[usize], tgt: &[usize]) -> usize {
        tgt.iter()
            .map(|&b| src.iter().map(|&a| self.pres.dim(a, b)).sum::<usize>())
            .sum()
    }

    pub fn zero(&self, src: &[usize], tgt: &[usize]) -> Mor {
        Mor {
            field: self.field(),
            src: src.to_vec(),
            tgt: tgt.to_vec(),
            coords: vec![self.field().zero(); self.hom_dim(src, tgt)],
        }
    }

    pub fn identity(&self, xs: &[usize]) -> Mor {
        let mut m = self.zero(xs, xs);
        let off = self.offsets(xs, xs);
        let n = xs.len();
        for (i, &x) in xs.iter().enumerate() {
            let start = off[i * n + i];
            for (k, c) in self.pres.identity(x).iter().enumerate() {
                m.coords[start + k] = c.clone();
            }
        }
        m
    }

    /// The standard basis of `Hom(src, tgt)`.
    pub fn basis(&self, src: &[usize], tgt: &[usize]) -> Vec<Mor> {
        let zero = self.zero(src, tgt);
        (0..zero.coords.len())
            .map(|k| {
                let mut m = zero.clone();
                m.coords[k] = self.field().one();
                m
            })
            .collect()
    }

    /// The component of `f` from source summand `i` to target summand `j`.
    pub fn block<'a>(&self, f: &'a Mor, j: usize, i: usize) -> &'a [Scalar] {
        let n = f.src.len();
        let off = self.offsets(&f.src, &f.tgt);
        &f.coords[off[j * n + i]..off[j * n + i + 1]]
    }

    /// Builds a morphism from its components; `component(j, i)` returns coordinates in
    /// `hom(src[i], tgt[j])` or `None` for zero.
    pub fn from_blocks(
        &self,
        src: &[usize],
        tgt: &[usize],
        mut component: impl FnMut(usize, usize) -> Option<Vec<Scalar>>,
    ) -> Mor {
        let mut m = self.zero(src, tgt);
        let off = self.offsets(src, tgt);
        let n = src.len();
        for j in 0..tgt.len() {
            for i in 0..n {
                if let Some(c) = component(j, i) {
                    let (a, b) = (off[j * n + i], off[j * n + i + 1]);
                    assert_eq!(c.len(), b - a, "component has wrong dimension");
                    m.coords[a..b].clone_from_slice(&c);
                }
            }
        }
        m
    }

    pub fn compose(&self, g: &Mor, f: &Mor) -> Mor {
        assert_eq!(g.src, f.tgt, "composition of non-composable morphisms");
        let (a, b, c) = (&f.src, &f.tgt, &g.tgt);
        let off_f = self.offsets(a, b);
        let off_g = self.offsets(b, c);
        let mut out = self.zero(a, c);
        let off_out = self.offsets(a, c);
        let (na, nb) = (a.len(), b.len());
        for (k, &zk) in c.iter().enumerate() {
            for (i, &xi) in a.iter().enumerate() {
                let slot = &mut out.coords[off_out[k * na + i]..off_out[k * na + i + 1]];
                for (j, &yj) in b.iter().enumerate() {
                    let gb = &g.coords[off_g[k * nb + j]..off_g[k * nb + j + 1]];
                    let fb = &f.coords[off_f[j * na + i]..off_f[j * na + i + 1]];
                    if gb.is_empty() || fb.is_empty() {
                        continue;
                    }
                    self.pres.compose_into((xi, yj, zk), gb, fb, slot);
                }
            }
        }
        out
    }

    /// Assembles a morphism `⊕ src_parts → ⊕ tgt_parts` from morphisms between parts.
    pub fn matrix(
        &self,
        src_parts: &[Vec<usize>],
        tgt_parts: &[Vec<usize>],
        mut entry: impl FnMut(usize, usize) -> Option<Mor>,
    ) -> Mor {
        let src: Vec<usize> = src_parts.concat();
        let tgt: Vec<usize> = tgt_parts.concat();
        let mut m = self.zero(&src, &tgt);
        let off = self.offsets(&src, &tgt);
        let n = src.len();
        let mut t0 = 0;
        for (pj, tp) in tgt_parts.iter().enumerate() {
            let mut s0 = 0;
            for (pi, sp) in src_parts.iter().enumerate() {
                if let Some(e) = entry(pj, pi) {
                    assert!(e.src == *sp && e.tgt == *tp, "matrix entry has wrong type");
                    let eoff = self.offsets(sp, tp);
                    let en = sp.len();
                    for b in 0..tp.len() {
                        for a in 0..sp.len() {
                            let dst = off[(t0 + b) * n + s0 + a];
                            let from = &e.coords[eoff[b * en + a]..eoff[b * en + a + 1]];
                            m.coords[dst..dst + from.len()].clone_from_slice(from);
                        }
                    }
                }
                s0 += sp.len();
            }
            t0 += tp.len();
        }
        m
    }

    /// Extracts the morphism between parts `(pj, pi)` of a block matrix.
    pub fn submatrix(
        &self,
        f: &Mor,
        src_parts: &[Vec<usize>],
        tgt_parts: &[Vec<usize>],
        pj: usize,
        pi: usize,
    ) -> Mor {
        let s0: usize = src_parts[..pi].iter().map(Vec::len).sum();
        let t0: usize = tgt_parts[..pj].iter().map(Vec::len).sum();
        let (sp, tp) = (&src_parts[pi], &tgt_parts[pj]);
        self.from_blocks(sp, tp, |b, a| Some(self.block(f, t0 + b, s0 + a).to_vec()))
    }

    pub fn injection(&self, parts: &[Vec<usize>], i: usize) -> Mor {
        let id = self.identity(&parts[i]);
        self.matrix(&parts[i..i + 1], parts, |j, _| (j == i).then(|| id.clone()))
    }

    pub fn projection(&self, parts: &[Vec<usize>], i: usize) -> Mor {
        let id = self.identity(&parts[i]);
        self.matrix(parts, &parts[i..i + 1], |_, j| (j == i).then(|| id.clone()))
    }

    pub fn block_diag(&self, mors: &[Mor]) -> Mor {
        let src: Vec<Vec<usize>> = mors.iter().map(|m| m.src.clone()).collect();
        let tgt: Vec<Vec<usize>> = mors.iter().map(|m| m.tgt.clone()).collect();
        self.matrix(&src, &tgt, |j, i| (i == j).then(|| mors[i].clone()))
    }

    /// `(m_0; m_1; ...) : X → ⊕ Y_j`.
    pub fn column(&self, mors: &[Mor]) -> Mor {
        let src = vec![mors[0].src.clone()];
        let tgt: Vec<Vec<usize>> = mors.iter().map(|m| m.tgt.clone()).collect();
        self.matrix(&src, &tgt, |j, _| Some(mors[j].clone()))
    }

    /// `(m_0, m_1, ...) : ⊕ X_i → Y`.
    pub fn row(&self, mors: &[Mor]) -> Mor {
        let src: Vec<Vec<usize>> = mors.iter().map(|m| m.src.clone()).collect();
        let tgt = vec![mors[0].tgt.clone()];
        self.matrix(&src, &tgt, |_, i| Some(mors[i].clone()))
    }

    /// Human-readable name of a formal sum, e.g. `X1⊕X2` or `0`.
    pub fn describe(&self, xs: &[usize]) -> String {
        if xs.is_empty() {
            return "0".into();
        }
        let names = self.pres.object_names();
        xs.iter().map(|&x| names[x].as_str()).collect::<Vec<_>>().join("⊕")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env() -> Envelope {
        Envelope::new(Arc::new(Presentation::a2_quiver(Field::Rational)))
    }

    #[test]
    fn identity_is_neutral() {
        let e = env();
        let xs = [0, 1, 1];
        let ys = [1, 0];
        for b in e.basis(&xs, &ys) {
            assert_eq!(e.compose(&e.identity(&ys), &b), b);
            assert_eq!(e.compose(&b, &e.identity(&xs)), b);
        }
    }

    #[test]
    fn injections_and_projections() {
        let e = env();
        let parts = vec![vec![0], vec![1, 0]];
        for i in 0..2 {
            let pi = e.projection(&parts, i);
            let ii = e.injection(&parts, i);
            assert_eq!(e.compose(&pi, &ii), e.identity(&parts[i]));
        }
        let total = e
            .compose(&e.injection(&parts, 0), &e.projection(&parts, 0))
            .add(&e.compose(&e.injection(&parts, 1), &e.projection(&parts, 1)));
        assert_eq!(total, e.identity(&[0, 1, 0]));
    }

    #[test]
    fn submatrix_recovers_entries() {
        let e = env();
        let a = e.basis(&[0], &[1])[0].clone();
        let parts_s = vec![vec![0], vec![0]];
        let parts_t = vec![vec![1], vec![0]];
        let m = e.matrix(&parts_s, &parts_t, |j, i| match (j, i) {
            (0, 1) => Some(a.clone()),
            (1, 0) => Some(e.identity(&[0])),
            _ => None,
        });
        assert_eq!(e.submatrix(&m, &parts_s, &parts_t, 0, 1), a);
        assert!(e.submatrix(&m, &parts_s, &parts_t, 0, 0).is_zero());
    }
}
