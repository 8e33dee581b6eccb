use crate::pgroup::Group;
use crate::{verification, Error, Result};

/// A subgroup of a [`Group`], stored as its sorted member indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    group_id: u64,
    members: Vec<u32>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.mask.get(x as usize).copied().unwrap_or(false)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn group_id(&self) -> u64 {
        self.group_id
    }
}

/// The Jennings series `D_1 = G >= D_2 >= ... >= D_n = 1`.
#[derive(Clone, Debug)]
pub struct DimensionSeries {
    terms: Vec<Subgroup>,
}

impl DimensionSeries {
    pub(crate) fn from_terms(terms: Vec<Subgroup>) -> Self {
        Self { terms }
    }

    /// `D_m` for `m >= 1`; trivial past the end.
    pub fn term(&self, m: usize) -> &Subgroup {
        assert!(m >= 1, "dimension subgroups are indexed from 1");
        let last = self.terms.len() - 1;
        &self.terms[(m - 1).min(last)]
    }

    /// Least `n` with `D_n = 1`.
    pub fn length(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[Subgroup] {
        &self.terms
    }

    /// `log_p |D_m / D_{m+1}|` for `m = 1 .. n-1`.
    pub fn layer_ranks(&self, p: u32) -> Vec<u32> {
        (1..self.length())
            .map(|m| log_p(self.term(m).order() / self.term(m + 1).order(), p))
            .collect()
    }
}

pub(crate) fn log_p(mut n: usize, p: u32) -> u32 {
    let mut k = 0;
    while n > 1 {
        n /= p as usize;
        k += 1;
    }
    k
}

impl Group {
    fn subgroup_from_sorted(&self, members: Vec<u32>) -> Subgroup {
        let mut mask = vec![false; self.order()];
        for &m in &members {
            mask[m as usize] = true;
        }
        Subgroup {
            group_id: self.id(),
            members,
            mask,
        }
    }

    pub(crate) fn check_parent(&self, u: &Subgroup) -> Result<()> {
        if u.group_id != self.id() {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }

    pub fn whole(&self) -> Subgroup {
        self.subgroup_from_sorted(self.elements().collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.subgroup_from_sorted(vec![0])
    }

    /// `<gens>`.
    pub fn subgroup_closure(&self, gens: &[u32]) -> Result<Subgroup> {
        if let Some(&bad) = gens.iter().find(|&&g| g as usize >= self.order()) {
            return Err(Error::NotSubgroup(format!("{bad} is not an element")));
        }
        Ok(self.subgroup_from_sorted(self.close(gens)))
    }

    /// Validates that `members` form a subgroup.
    pub fn subgroup_from_members(&self, members: &[u32]) -> Result<Subgroup> {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let s = self.subgroup_from_sorted(sorted);
        if !s.contains(0) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for &x in &s.members {
            for &y in &s.members {
                if !s.contains(self.mul(x, y)) {
                    return Err(Error::NotSubgroup(format!("not closed at ({x}, {y})")));
                }
            }
        }
        Ok(s)
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, gens: &[u32]) -> Result<Subgroup> {
        let mut gens: Vec<u32> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut current = self.subgroup_closure(&gens)?;
        loop {
            let mut grew = false;
            let snapshot = gens.clone();
            for &g in &snapshot {
                for &t in self.generators() {
                    let c = self.conjugate(g, t);
                    if !current.contains(c) {
                        gens.push(c);
                        current = self.subgroup_closure(&gens)?;
                        grew = true;
                    }
                }
            }
            if !grew {
                return Ok(current);
            }
        }
    }

    /// A small generating set of `u`, chosen greedily in index order.
    pub fn subgroup_generators(&self, u: &Subgroup) -> Vec<u32> {
        self.greedy_generators(&u.members)
    }

    pub fn is_normal(&self, u: &Subgroup) -> bool {
        let gens = self.subgroup_generators(u);
        gens.iter().all(|&g| {
            self.generators()
                .iter()
                .all(|&t| u.contains(self.conjugate(g, t)))
        })
    }

    pub fn product(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        self.check_parent(a)?;
        self.check_parent(b)?;
        let mut gens = self.subgroup_generators(a);
        gens.extend(self.subgroup_generators(b));
        self.subgroup_closure(&gens)
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        self.check_parent(a)?;
        self.check_parent(b)?;
        let members = a
            .members
            .iter()
            .copied()
            .filter(|&x| b.contains(x))
            .collect();
        Ok(self.subgroup_from_sorted(members))
    }

    /// `[A, B]` for normal subgroups `A`, `B`: the normal closure of the
    /// commutators of their generators.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        self.check_parent(a)?;
        self.check_parent(b)?;
        let ga = self.subgroup_generators(a);
        let gb = self.subgroup_generators(b);
        let comms: Vec<u32> = ga
            .iter()
            .flat_map(|&x| gb.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.commutator(x, y))
            .collect();
        self.normal_closure(&comms)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let whole = self.whole();
        self.commutator_subgroup(&whole, &whole)
            .expect("whole group belongs to itself")
    }

    pub fn center(&self) -> Subgroup {
        let members = self
            .elements()
            .filter(|&x| {
                self.generators()
                    .iter()
                    .all(|&g| self.mul(x, g) == self.mul(g, x))
            })
            .collect();
        self.subgroup_from_sorted(members)
    }

    /// `C_G(U)`, by scanning all elements against generators of `U`.
    pub fn centralizer(&self, u: &Subgroup) -> Result<Subgroup> {
        self.check_parent(u)?;
        let gens = self.subgroup_generators(u);
        let members = self
            .elements()
            .filter(|&x| gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
            .collect();
        Ok(self.subgroup_from_sorted(members))
    }

    /// `U^{p^n}`: generated by the `p^n`-th powers of all elements of `U`.
    pub fn agemo(&self, u: &Subgroup, n: u32) -> Result<Subgroup> {
        self.check_parent(u)?;
        let e = (self.p() as u64).pow(n);
        let mut powers: Vec<u32> = u.members.iter().map(|&x| self.pow(x, e)).collect();
        powers.sort_unstable();
        powers.dedup();
        let gens = self.greedy_generators(&powers);
        self.subgroup_closure(&gens)
    }

    /// `Omega_n(U)`: generated by the elements of `U` of order dividing `p^n`.
    pub fn omega(&self, u: &Subgroup, n: u32) -> Result<Subgroup> {
        self.check_parent(u)?;
        let e = (self.p() as u64).pow(n);
        let small: Vec<u32> = u
            .members
            .iter()
            .copied()
            .filter(|&x| self.pow(x, e) == 0)
            .collect();
        let gens = self.greedy_generators(&small);
        self.subgroup_closure(&gens)
    }

    /// `Phi(G) = G^p G'`.
    pub fn frattini(&self) -> Subgroup {
        let whole = self.whole();
        let agemo = self.agemo(&whole, 1).expect("own subgroup");
        self.product(&agemo, &self.derived_subgroup())
            .expect("own subgroups")
    }

    /// `gamma_1 = G, gamma_{i+1} = [G, gamma_i]`, ending with the trivial group.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let whole = self.whole();
        let mut series = vec![whole.clone()];
        loop {
            let last = series.last().expect("nonempty");
            if last.is_trivial() {
                return series;
            }
            let next = self
                .commutator_subgroup(&whole, last)
                .expect("own subgroups");
            if next.order() == last.order() {
                // Only possible for non-nilpotent input, which p-groups never are.
                return series;
            }
            series.push(next);
        }
    }

    pub fn nilpotency_class(&self) -> usize {
        self.lower_central_series().len() - 1
    }

    /// Conjugacy classes, each sorted, ordered by least member (identity first).
    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.order()];
        let mut classes = Vec::new();
        for x in self.elements() {
            if seen[x as usize] {
                continue;
            }
            seen[x as usize] = true;
            let mut class = vec![x];
            let mut head = 0;
            while head < class.len() {
                let y = class[head];
                head += 1;
                for &t in self.generators() {
                    let z = self.conjugate(y, t);
                    if !seen[z as usize] {
                        seen[z as usize] = true;
                        class.push(z);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// Dimension subgroups from `D_m = prod_{i p^j >= m} gamma_i^{p^j}`,
    /// cross-checked against `D_m = [G, D_{m-1}] D_{ceil(m/p)}^p` and against
    /// the restricted N-series laws.
    pub fn dimension_subgroups(&self) -> Result<DimensionSeries> {
        let p = self.p() as usize;
        let gamma = self.lower_central_series();
        let class = gamma.len() - 1;
        let mut terms: Vec<Subgroup> = Vec::new();
        let mut m = 1usize;
        loop {
            let mut gens = Vec::new();
            for i in 1..=class {
                let mut j = 0u32;
                let mut ipj = i;
                while ipj < m {
                    ipj *= p;
                    j += 1;
                }
                let factor = self.agemo(&gamma[i - 1], j)?;
                gens.extend(self.subgroup_generators(&factor));
            }
            let d = self.subgroup_closure(&gens)?;
            let done = d.is_trivial();
            terms.push(d);
            if done {
                break;
            }
            m += 1;
        }
        let series = DimensionSeries { terms };

        let whole = self.whole();
        for m in 2..=series.length() {
            let comm = self.commutator_subgroup(&whole, series.term(m - 1))?;
            let pw = self.agemo(series.term(m.div_ceil(p)), 1)?;
            let inductive = self.product(&comm, &pw)?;
            if &inductive != series.term(m) {
                return Err(verification(
                    "dimension subgroups",
                    format!("closed and inductive formulas disagree at m = {m}"),
                ));
            }
        }
        let n = series.length();
        for i in 1..n {
            for j in i..n {
                let c = self.commutator_subgroup(series.term(i), series.term(j))?;
                if !c.is_subset_of(series.term(i + j)) {
                    return Err(verification(
                        "dimension subgroups",
                        format!("[D_{i}, D_{j}] is not inside D_{}", i + j),
                    ));
                }
            }
            let pw = self.agemo(series.term(i), 1)?;
            if !pw.is_subset_of(series.term(i * p)) {
                return Err(verification(
                    "dimension subgroups",
                    format!("D_{i}^p is not inside D_{}", i * p),
                ));
            }
        }
        Ok(series)
    }

    /// `G/N` as a table group, with the projection `G -> G/N`. Cosets are
    /// numbered by their least member.
    pub fn quotient_group(&self, n: &Subgroup) -> Result<(Group, Vec<u32>)> {
        self.check_parent(n)?;
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let mut proj = vec![u32::MAX; self.order()];
        let mut reps = Vec::new();
        for x in self.elements() {
            if proj[x as usize] != u32::MAX {
                continue;
            }
            let idx = reps.len() as u32;
            reps.push(x);
            for &k in &n.members {
                proj[self.mul(x, k) as usize] = idx;
            }
        }
        let q = reps.len();
        let mut table = vec![0u32; q * q];
        for (i, &ri) in reps.iter().enumerate() {
            for (j, &rj) in reps.iter().enumerate() {
                table[i * q + j] = proj[self.mul(ri, rj) as usize];
            }
        }
        let group = Group::from_table(self.p(), table)?;
        Ok((group, proj))
    }

    /// `U` as a group in its own right, with the embedding into `G`.
    pub fn subgroup_as_group(&self, u: &Subgroup) -> Result<(Group, Vec<u32>)> {
        self.check_parent(u)?;
        let members = &u.members;
        let mut local = vec![u32::MAX; self.order()];
        for (i, &m) in members.iter().enumerate() {
            local[m as usize] = i as u32;
        }
        let q = members.len();
        let mut table = vec![0u32; q * q];
        for (i, &x) in members.iter().enumerate() {
            for (j, &y) in members.iter().enumerate() {
                table[i * q + j] = local[self.mul(x, y) as usize];
            }
        }
        let group = Group::from_table(self.p(), table)?;
        Ok((group, members.clone()))
    }

    /// The section `U/V` as a table group, for `V` normal in `U`.
    pub fn section_group(&self, u: &Subgroup, v: &Subgroup) -> Result<Group> {
        self.check_parent(v)?;
        if !v.is_subset_of(u) {
            return Err(Error::NotSubgroup("V is not contained in U".into()));
        }
        let (k, embedding) = self.subgroup_as_group(u)?;
        let local: Vec<u32> = (0..k.order() as u32)
            .filter(|&i| v.contains(embedding[i as usize]))
            .collect();
        let vk = k.subgroup_from_members(&local)?;
        Ok(k.quotient_group(&vk)?.0)
    }

    /// Cyclic subgroups, each with one generator, in order of first appearance.
    fn cyclic_subgroups(&self) -> Vec<(Vec<u32>, u32)> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for x in self.elements() {
            let c = self.close(&[x]);
            if seen.insert(c.clone()) {
                out.push((c, x));
            }
        }
        out
    }

    /// Number of conjugacy classes of cyclic subgroups.
    pub fn cyclic_subgroup_class_count(&self) -> usize {
        let cyclic = self.cyclic_subgroups();
        let index: std::collections::HashMap<&[u32], usize> = cyclic
            .iter()
            .enumerate()
            .map(|(i, (c, _))| (c.as_slice(), i))
            .collect();
        let mut seen = vec![false; cyclic.len()];
        let mut count = 0;
        for start in 0..cyclic.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(k) = stack.pop() {
                for &t in self.generators() {
                    let image = self.close(&[self.conjugate(cyclic[k].1, t)]);
                    let idx = index[image.as_slice()];
                    if !seen[idx] {
                        seen[idx] = true;
                        stack.push(idx);
                    }
                }
            }
        }
        count
    }

    pub fn cyclic_subgroup_count(&self) -> usize {
        self.cyclic_subgroups().len()
    }
}
