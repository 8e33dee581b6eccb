use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::pgroup::Group;

impl Group {
    /// Elementary abelian subgroups, each as its sorted member list, excluding
    /// the trivial subgroup.
    pub fn elementary_abelian_subgroups(&self) -> Vec<Vec<u32>> {
        let p = self.p() as u64;
        let order_p: Vec<u32> = self
            .elements()
            .filter(|&x| x != 0 && self.pow(x, p) == 0)
            .collect();
        let mut all = Vec::new();
        let mut layer: BTreeSet<Vec<u32>> = BTreeSet::new();
        for &x in &order_p {
            let mut m = self.close(&[x]);
            m.sort_unstable();
            layer.insert(m);
        }
        while !layer.is_empty() {
            let mut next = BTreeSet::new();
            for e in &layer {
                for x in self.extensions(e, &order_p) {
                    next.insert(x);
                }
            }
            all.extend(layer);
            layer = next;
        }
        all
    }

    fn extensions<'a>(
        &'a self,
        e: &'a [u32],
        order_p: &'a [u32],
    ) -> impl Iterator<Item = Vec<u32>> + 'a {
        let members: HashSet<u32> = e.iter().copied().collect();
        order_p.iter().filter_map(move |&x| {
            if members.contains(&x) || e.iter().any(|&y| self.mul(x, y) != self.mul(y, x)) {
                return None;
            }
            let mut out = Vec::with_capacity(e.len() * self.p() as usize);
            let mut xi = 0u32;
            for _ in 0..self.p() {
                out.extend(e.iter().map(|&y| self.mul(y, xi)));
                xi = self.mul(xi, x);
            }
            out.sort_unstable();
            Some(out)
        })
    }

    /// Number of conjugacy classes of maximal elementary abelian subgroups,
    /// keyed by rank.
    pub fn maximal_elementary_abelian_classes(&self) -> BTreeMap<u32, usize> {
        let p = self.p() as u64;
        let order_p: Vec<u32> = self
            .elements()
            .filter(|&x| x != 0 && self.pow(x, p) == 0)
            .collect();
        let maximal: Vec<Vec<u32>> = self
            .elementary_abelian_subgroups()
            .into_iter()
            .filter(|e| self.extensions(e, &order_p).next().is_none())
            .collect();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut counts = BTreeMap::new();
        for e in maximal {
            if seen.contains(&e) {
                continue;
            }
            let rank = crate::pgroup::subgroup::log_p(e.len(), self.p());
            *counts.entry(rank).or_insert(0) += 1;
            let mut stack = vec![e.clone()];
            seen.insert(e);
            while let Some(f) = stack.pop() {
                for &g in self.generators() {
                    let mut c: Vec<u32> = f.iter().map(|&y| self.conjugate(y, g)).collect();
                    c.sort_unstable();
                    if seen.insert(c.clone()) {
                        stack.push(c);
                    }
                }
            }
        }
        counts
    }
}

#[cfg(test)]
mod tests {
    use crate::families::{build, Family};

    #[test]
    fn small_cases() {
        let d8 = build(&Family::Dihedral { order: 8 }).unwrap();
        assert_eq!(
            d8.maximal_elementary_abelian_classes()
                .into_iter()
                .collect::<Vec<_>>(),
            vec![(2, 2)]
        );
        let q8 = build(&Family::Quaternion { order: 8 }).unwrap();
        assert_eq!(
            q8.maximal_elementary_abelian_classes()
                .into_iter()
                .collect::<Vec<_>>(),
            vec![(1, 1)]
        );
        let c3 = build(&Family::Cyclic { p: 3, log_order: 1 }).unwrap();
        assert_eq!(
            c3.maximal_elementary_abelian_classes()
                .into_iter()
                .collect::<Vec<_>>(),
            vec![(1, 1)]
        );
        // D8 has 5 involutions and two Klein four subgroups
        assert_eq!(d8.elementary_abelian_subgroups().len(), 7);
    }
}
