//! Finite groups given by multiplication tables.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Group {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    names: Vec<String>,
}

impl Group {
    /// Validates a multiplication table `table[a][b] = a·b`.
    pub fn from_table(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Input("empty group".into()));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Input("group table must be square with entries < order".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::Input("group table has no identity".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Input(format!("group table not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let inverses = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a][b] == identity && table[b][a] == identity)
                    .ok_or_else(|| Error::Input(format!("element {a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        let names = match names {
            Some(v) if v.len() == n => v,
            Some(_) => return Err(Error::Input("wrong number of group element names".into())),
            None => (0..n).map(|i| format!("g{i}")).collect(),
        };
        Ok(Group {
            table,
            identity,
            inverses,
            names,
        })
    }

    /// `ℤ/n` with elements `0..n`, element `i` written `g^i`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let names = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            })
            .collect();
        Group::from_table(table, Some(names)).expect("cyclic group table is valid")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.elements().map(|a| self.element_order(a)).fold(1, lcm)
    }

    /// A generating set chosen greedily in element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for a in self.elements() {
            if span.contains(&a) {
                continue;
            }
            gens.push(a);
            span = self.closure(&gens);
        }
        gens
    }

    /// The subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut span = vec![self.identity];
        let mut i = 0;
        while i < span.len() {
            for &g in gens {
                let x = self.mul(span[i], g);
                if !span.contains(&x) {
                    span.push(x);
                }
            }
            i += 1;
        }
        span
    }

    /// Fails unless `|G|` is invertible in `field`.
    pub fn require_invertible_order(&self, field: Field) -> Result<()> {
        if field.is_unit_integer(self.order() as i64) {
            Ok(())
        } else {
            Err(Error::GroupOrderNotInvertible {
                order: self.order(),
                characteristic: field.characteristic(),
            })
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_basics() {
        let g = Group::cyclic(6);
        assert_eq!(g.exponent(), 6);
        assert_eq!(g.inv(2), 4);
        assert_eq!(g.generators(), vec![1]);
        assert!(g.is_abelian());
    }

    #[test]
    fn klein_four_needs_two_generators() {
        let t = vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]];
        let g = Group::from_table(t, None).unwrap();
        assert_eq!(g.exponent(), 2);
        assert_eq!(g.generators().len(), 2);
    }

    #[test]
    fn rejects_non_associative() {
        let t = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 0]];
        assert!(Group::from_table(t, None).is_err());
    }

    #[test]
    fn order_invertibility() {
        let g = Group::cyclic(2);
        assert!(g.require_invertible_order(Field::Prime(5)).is_ok());
        assert!(matches!(
            g.require_invertible_order(Field::Prime(2)),
            Err(Error::GroupOrderNotInvertible { order: 2, characteristic: 2 })
        ));
    }
}
