use std::collections::HashMap;

use fplinalg::{rank, FpVector};

use crate::algebra::FiniteAlgebra;
use crate::pgroup::Group;
use crate::{Error, Result};

/// Default largest unit group built by closure or enumeration.
pub const DEFAULT_UNIT_CAP: usize = 1 << 16;

/// A finite group of normalized units, held as coefficient vectors in
/// discovery order with the identity first.
#[derive(Clone, Debug)]
pub struct UnitClosure {
    p: u32,
    dim: usize,
    members: Vec<FpVector>,
    index: HashMap<FpVector, u32>,
    generators: Vec<u32>,
}

impl UnitClosure {
    fn with_identity(p: u32, one: FpVector) -> Self {
        let dim = one.len();
        let mut index = HashMap::new();
        index.insert(one.clone(), 0);
        Self {
            p,
            dim,
            members: vec![one],
            index,
            generators: Vec::new(),
        }
    }

    fn push(&mut self, v: FpVector) -> (u32, bool) {
        if let Some(&i) = self.index.get(&v) {
            return (i, false);
        }
        let i = self.members.len() as u32;
        self.index.insert(v.clone(), i);
        self.members.push(v);
        (i, true)
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[FpVector] {
        &self.members
    }

    /// Member indices of the generators the closure was built from.
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn index_of(&self, v: &FpVector) -> Option<u32> {
        self.index.get(v).copied()
    }

    pub fn contains(&self, v: &FpVector) -> bool {
        self.index.contains_key(v)
    }

    /// Rank over `F_p` of the members as vectors; a group basis has full rank.
    pub fn span_rank(&self) -> usize {
        rank(self.p, self.dim, &self.members).expect("shapes agree")
    }

    /// The multiplication table as a [`Group`], member `i` becoming element `i`.
    pub fn to_group<A: FiniteAlgebra>(&self, algebra: &A) -> Result<Group> {
        let n = self.order();
        let mut table = vec![0u32; n * n];
        for (i, x) in self.members.iter().enumerate() {
            for (j, y) in self.members.iter().enumerate() {
                let z = algebra.mul_vectors(x, y);
                table[i * n + j] = self.index_of(&z).ok_or_else(|| {
                    crate::verification("unit group table", "product left the member set")
                })?;
            }
        }
        Group::from_table(self.p, table)
    }
}

/// The group generated by normalized units, by breadth-first closure under
/// right multiplication by the generators.
pub fn unit_closure<A: FiniteAlgebra>(
    algebra: &A,
    generators: &[FpVector],
    cap: usize,
) -> Result<UnitClosure> {
    for g in generators {
        let c = algebra.augmentation_of(g);
        if c != 1 {
            return Err(Error::NotNormalized(c));
        }
    }
    let mut closure = UnitClosure::with_identity(algebra.prime(), algebra.one_vector());
    for g in generators {
        let (i, _) = closure.push(g.clone());
        closure.generators.push(i);
    }
    let mut head = 0;
    while head < closure.members.len() {
        let x = closure.members[head].clone();
        head += 1;
        for g in generators {
            closure.push(algebra.mul_vectors(&x, g));
            if closure.order() > cap {
                return Err(Error::CapExceeded {
                    what: "unit closure",
                    size: closure.order() as u128,
                    cap: cap as u128,
                });
            }
        }
    }
    Ok(closure)
}

/// All elements of augmentation 1, which in a quotient of a modular p-group
/// algebra are exactly the normalized units.
pub fn enumerate_normalized_units<A: FiniteAlgebra>(
    algebra: &A,
    cap: usize,
) -> Result<UnitClosure> {
    let p = algebra.prime();
    let dim = algebra.dim();
    let total = (p as u128)
        .checked_pow(dim.saturating_sub(1) as u32)
        .unwrap_or(u128::MAX);
    if dim == 0 || total > cap as u128 {
        return Err(Error::CapExceeded {
            what: "normalized unit enumeration",
            size: total,
            cap: cap as u128,
        });
    }
    let mut closure = UnitClosure::with_identity(p, algebra.one_vector());
    let mut digits = vec![0u32; dim];
    for _ in 0..(p as u128).pow(dim as u32) {
        let v = FpVector::from_entries(p, &digits.iter().map(|&d| d as i64).collect::<Vec<_>>())?;
        if v.entry_sum() == 1 {
            closure.push(v);
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < p {
                break;
            }
            *d = 0;
        }
    }
    Ok(closure)
}
