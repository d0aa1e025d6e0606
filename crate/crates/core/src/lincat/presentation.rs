//! Finite k-linear categories given by based Hom spaces and structure constants.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// Sparse coordinate vector: `(basis index, coefficient)` pairs with nonzero coefficients.
pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq)]
pub struct HomSpace {
    pub dim: usize,
    pub labels: Vec<String>,
}

/// A finite k-linear category: objects, based Hom spaces, bilinear composition.
///
/// Composition of basis vector `a` of `hom(y, z)` after basis vector `b` of `hom(x, y)` is
/// stored under the key `(x, y, z)` at index `a * dim hom(x, y) + b`. Missing triples compose
/// to zero.
#[derive(Clone, Debug)]
pub struct Presentation {
    field: Field,
    objects: Vec<String>,
    homs: Vec<HomSpace>,
    compose: HashMap<(usize, usize, usize), Vec<SparseVec>>,
    identities: Vec<Vec<Scalar>>,
}

/// One violated axiom instance. Indices refer to objects and basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    Associativity {
        objects: [usize; 4],
        basis: [usize; 3],
    },
    LeftUnit {
        objects: [usize; 2],
        basis: usize,
    },
    RightUnit {
        objects: [usize; 2],
        basis: usize,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Presentation {
    /// Objects with all Hom spaces zero; fill in with [`set_hom`](Self::set_hom) and friends.
    pub fn new(field: Field, objects: Vec<String>) -> Self {
        let n = objects.len();
        Presentation {
            field,
            homs: vec![
                HomSpace {
                    dim: 0,
                    labels: Vec::new()
                };
                n * n
            ],
            compose: HashMap::new(),
            identities: vec![Vec::new(); n],
            objects,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn hom(&self, x: usize, y: usize) -> &HomSpace {
        &self.homs[x * self.objects.len() + y]
    }

    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.hom(x, y).dim
    }

    pub fn set_hom(&mut self, x: usize, y: usize, labels: Vec<String>) {
        let n = self.objects.len();
        self.homs[x * n + y] = HomSpace {
            dim: labels.len(),
            labels,
        };
    }

    pub fn set_identity(&mut self, x: usize, coords: Vec<Scalar>) {
        self.identities[x] = coords;
    }

    pub fn identity(&self, x: usize) -> &[Scalar] {
        &self.identities[x]
    }

    /// Records `a ∘ b` for basis `a` of `hom(y, z)` and `b` of `hom(x, y)`.
    pub fn set_product(
        &mut self,
        (x, y, z): (usize, usize, usize),
        a: usize,
        b: usize,
        result: SparseVec,
    ) {
        let (da, db) = (self.dim(y, z), self.dim(x, y));
        let entry = self
            .compose
            .entry((x, y, z))
            .or_insert_with(|| vec![Vec::new(); da * db]);
        entry[a * db + b] = result.into_iter().filter(|(_, s)| !s.is_zero()).collect();
    }

    pub fn product(&self, (x, y, z): (usize, usize, usize), a: usize, b: usize) -> &[(usize, Scalar)] {
        match self.compose.get(&(x, y, z)) {
            Some(table) => &table[a * self.dim(x, y) + b],
            None => &[],
        }
    }

    /// Composes `g ∈ hom(y, z)` after `f ∈ hom(x, y)`, both in coordinates.
    pub fn compose(&self, (x, y, z): (usize, usize, usize), g: &[Scalar], f: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim(x, z)];
        self.compose_into((x, y, z), g, f, &mut out);
        out
    }

    /// Adds `g ∘ f` into `out`.
    pub fn compose_into(
        &self,
        (x, y, z): (usize, usize, usize),
        g: &[Scalar],
        f: &[Scalar],
        out: &mut [Scalar],
    ) {
        let Some(table) = self.compose.get(&(x, y, z)) else {
            return;
        };
        let db = self.dim(x, y);
        for (a, ga) in g.iter().enumerate() {
            if ga.is_zero() {
                continue;
            }
            for (b, fb) in f.iter().enumerate() {
                if fb.is_zero() {
                    continue;
                }
                let coeff = ga * fb;
                for (k, s) in &table[a * db + b] {
                    out[*k] = &out[*k] + &(&coeff * s);
                }
            }
        }
    }

    fn basis_vector(&self, dim: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); dim];
        v[i] = self.field.one();
        v
    }

    /// Checks that the structure constants are dimensionally consistent.
    pub fn check_shapes(&self) -> Result<()> {
        let n = self.objects.len();
        for x in 0..n {
            if self.identities[x].len() != self.dim(x, x) {
                return Err(Error::Input(format!(
                    "identity of {} has {} coordinates, End has dimension {}",
                    self.objects[x],
                    self.identities[x].len(),
                    self.dim(x, x)
                )));
            }
        }
        for (&(x, y, z), table) in &self.compose {
            if x >= n || y >= n || z >= n {
                return Err(Error::Input(format!("composition triple ({x},{y},{z}) out of range")));
            }
            if table.len() != self.dim(y, z) * self.dim(x, y) {
                return Err(Error::Input(format!(
                    "composition table for ({},{},{}) has wrong size",
                    self.objects[x], self.objects[y], self.objects[z]
                )));
            }
            let dz = self.dim(x, z);
            if table.iter().flatten().any(|(k, _)| *k >= dz) {
                return Err(Error::Input(format!(
                    "composition into hom({},{}) exceeds its dimension {dz}",
                    self.objects[x], self.objects[z]
                )));
            }
        }
        Ok(())
    }

    /// Checks associativity on every composable basis triple and both unit laws.
    pub fn validate(&self) -> Result<ValidationReport> {
        self.check_shapes()?;
        let n = self.objects.len();
        let mut report = ValidationReport::default();
        for x in 0..n {
            for y in 0..n {
                let d = self.dim(x, y);
                for b in 0..d {
                    let f = self.basis_vector(d, b);
                    report.checked += 2;
                    if self.compose((x, y, y), self.identity(y), &f) != f {
                        report.violations.push(Violation::LeftUnit {
                            objects: [x, y],
                            basis: b,
                        });
                    }
                    if self.compose((x, x, y), &f, self.identity(x)) != f {
                        report.violations.push(Violation::RightUnit {
                            objects: [x, y],
                            basis: b,
                        });
                    }
                }
            }
        }
        for w in 0..n {
            for x in 0..n {
                let d1 = self.dim(w, x);
                if d1 == 0 {
                    continue;
                }
                for y in 0..n {
                    let d2 = self.dim(x, y);
                    if d2 == 0 {
                        continue;
                    }
                    for z in 0..n {
                        let d3 = self.dim(y, z);
                        for a in 0..d1 {
                            let f = self.basis_vector(d1, a);
                            for b in 0..d2 {
                                let g = self.basis_vector(d2, b);
                                let gf = self.compose((w, x, y), &g, &f);
                                for c in 0..d3 {
                                    let h = self.basis_vector(d3, c);
                                    let hg = self.compose((x, y, z), &h, &g);
                                    report.checked += 1;
                                    if self.compose((w, y, z), &h, &gf)
                                        != self.compose((w, x, z), &hg, &f)
                                    {
                                        report.violations.push(Violation::Associativity {
                                            objects: [w, x, y, z],
                                            basis: [a, b, c],
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(report)
    }

    /// One object with `End = k·id`.
    pub fn ground_field(field: Field) -> Self {
        Presentation::discrete(field, &["k"])
    }

    /// Objects with `Hom(X_i, X_j) = k·δ_ij`.
    pub fn discrete(field: Field, names: &[&str]) -> Self {
        let mut p = Presentation::new(field, names.iter().map(|s| s.to_string()).collect());
        for i in 0..names.len() {
            p.set_hom(i, i, vec![format!("id_{}", names[i])]);
            p.set_identity(i, vec![field.one()]);
            p.set_product((i, i, i), 0, 0, vec![(0, field.one())]);
        }
        p
    }

    /// Path category of the quiver `1 → 2`.
    pub fn a2_quiver(field: Field) -> Self {
        let mut p = Presentation::discrete(field, &["1", "2"]);
        p.set_hom(0, 1, vec!["a".into()]);
        p.set_product((0, 1, 1), 0, 0, vec![(0, field.one())]);
        p.set_product((0, 0, 1), 0, 0, vec![(0, field.one())]);
        p
    }

    /// Overwrites a single structure constant; used to build deliberately broken inputs.
    pub fn perturb(&mut self, triple: (usize, usize, usize), a: usize, b: usize, result: SparseVec) {
        self.set_product(triple, a, b, result);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_field_is_valid() {
        let p = Presentation::ground_field(Field::Prime(5));
        assert!(p.validate().unwrap().passes());
    }

    #[test]
    fn a2_quiver_is_valid() {
        let p = Presentation::a2_quiver(Field::Rational);
        let r = p.validate().unwrap();
        assert!(r.passes(), "{:?}", r.violations);
        assert_eq!(p.dim(0, 1), 1);
        assert_eq!(p.dim(1, 0), 0);
    }

    #[test]
    fn perturbed_constant_reports_triple() {
        let f = Field::Rational;
        let mut p = Presentation::a2_quiver(f);
        // a ∘ id_1 := 2a breaks the right unit law and associativity through id_1.
        p.perturb((0, 0, 1), 0, 0, vec![(0, f.from_i64(2))]);
        let r = p.validate().unwrap();
        assert!(!r.passes());
        assert!(r.violations.contains(&Violation::RightUnit {
            objects: [0, 1],
            basis: 0
        }));
        assert!(r.violations.contains(&Violation::Associativity {
            objects: [0, 0, 0, 1],
            basis: [0, 0, 0]
        }));
    }

    #[test]
    fn shape_mismatch_is_input_error() {
        let f = Field::Rational;
        let mut p = Presentation::ground_field(f);
        p.set_identity(0, vec![f.one(), f.one()]);
        assert!(matches!(p.validate(), Err(Error::Input(_))));
    }
}
