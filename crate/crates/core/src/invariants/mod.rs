//! Proven invariants of `F_p[G]`, collected into a fingerprint, and the
//! comparison of fingerprints.

mod compare;
mod counts;
mod descriptors;
mod kernel;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::GroupAlgebra;
use crate::jennings::jennings_basis;
use crate::pgroup::subgroup::log_p;
use crate::pgroup::{AbelianType, Group, DEFAULT_ORDER_CAP};
use crate::{Error, Result};

pub use compare::{compare, compare_fingerprints, ComparisonReport, FieldValues, Verdict};
pub use counts::{
    kuelshammer_count, kuelshammer_count_algebra, kuelshammer_count_group, pm_count,
    pm_count_algebra, pm_count_group, roggenkamp_parameter,
};
pub use descriptors::{descriptors, ClassConditions, Descriptors};
pub use kernel::{KernelSizer, DEFAULT_KERNEL_CAP};

/// Caps bounding the exhaustive parts of a fingerprint.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub order: usize,
    pub kernel: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            order: DEFAULT_ORDER_CAP,
            kernel: DEFAULT_KERNEL_CAP,
        }
    }
}

/// The four abelian sections attached to one power index `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterSections {
    pub n: u32,
    /// `G / Omega_n(Z(G)) G'`
    pub g_mod_omega_center_derived: AbelianType,
    /// `Omega_n(Z(G)) G' / G'`
    pub omega_center_derived_mod_derived: AbelianType,
    /// `Z(G) ∩ G' G^{p^n}`
    pub center_meet_derived_agemo: AbelianType,
    /// `Z(G) / (Z(G) ∩ G' G^{p^n})`
    pub center_mod_derived_agemo: AbelianType,
}

/// Comparable data of a section `D_a / D_b` of the dimension series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionSurrogate {
    pub lower: usize,
    pub upper: usize,
    pub log_order: u32,
    pub exponent: u64,
    /// Present when the section is abelian.
    pub abelian_type: Option<AbelianType>,
    pub abelianization: AbelianType,
    pub center: AbelianType,
    /// `log_p |D_i(S) / D_{i+1}(S)|` for the section `S` itself.
    pub dimension_ranks: Vec<u32>,
}

/// Invariants of `F_p[G]`, each a function of the algebra alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub p: u32,
    pub order: u64,
    pub exponent: u64,
    pub abelianization: AbelianType,
    pub center: AbelianType,
    /// `D_i / D_{i+1}` for `i = 1, 2, ...`
    pub dim_quotients: Vec<AbelianType>,
    pub center_sections: Vec<CenterSections>,
    /// `D_i(G') / D_{i+1}(G')`
    pub derived_dim_quotients: Vec<AbelianType>,
    /// Indexed by `n = 0 ..= log_p(exponent)`.
    pub kuelshammer_counts: Vec<u64>,
    pub pm_counts: Vec<u64>,
    /// Keyed `"i,s"`; `null` when the coset count exceeded the cap.
    pub kernel_sizes: BTreeMap<String, Option<u64>>,
    /// Conjugacy classes of maximal elementary abelian subgroups by rank.
    pub quillen_counts: BTreeMap<u32, usize>,
    pub roggenkamp: u64,
    /// `p^t` with `t = log_p [Omega_1(Z(G)) : Omega_1(Z(G)) ∩ Phi(G)]`.
    pub elem_factor_order: u64,
    /// Sections `D_n / D_{n+2}` and `D_n / D_{2n+1}`.
    pub dimension_sections: Vec<SectionSurrogate>,
}

impl Fingerprint {
    /// Sorted-key JSON.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("plain data");
        serde_json::to_string_pretty(&value).expect("plain data")
    }
}

fn center_sections(g: &Group, n: u32) -> Result<CenterSections> {
    let whole = g.whole();
    let z = g.center();
    let d = g.derived_subgroup();
    let omega = g.omega(&z, n)?;
    let omega_d = g.product(&omega, &d)?;
    let d_agemo = g.product(&d, &g.agemo(&whole, n)?)?;
    let meet = g.intersection(&z, &d_agemo)?;
    Ok(CenterSections {
        n,
        g_mod_omega_center_derived: g.abelian_section_type(&whole, &omega_d)?,
        omega_center_derived_mod_derived: g.abelian_section_type(&omega_d, &d)?,
        center_meet_derived_agemo: g.abelian_type(&meet)?,
        center_mod_derived_agemo: g.abelian_section_type(&z, &meet)?,
    })
}

fn surrogate(
    g: &Group,
    series: &crate::pgroup::DimensionSeries,
    lower: usize,
    upper: usize,
) -> Result<SectionSurrogate> {
    let s = g.section_group(series.term(lower), series.term(upper))?;
    let abelian_type = if s.is_abelian() {
        Some(s.abelian_type_of_group()?)
    } else {
        None
    };
    Ok(SectionSurrogate {
        lower,
        upper,
        log_order: s.log_order(),
        exponent: s.exponent(),
        abelian_type,
        abelianization: s.abelian_section_type(&s.whole(), &s.derived_subgroup())?,
        center: s.abelian_type(&s.center())?,
        dimension_ranks: s.dimension_subgroups()?.layer_ranks(s.p()),
    })
}

/// The dimension-series sections as groups, for the isomorphism check in
/// [`compare`].
pub(crate) fn dimension_section_groups(g: &Group) -> Result<Vec<((usize, usize), Group)>> {
    let series = g.dimension_subgroups()?;
    let mut out = Vec::new();
    for (lower, upper) in section_bounds(series.length()) {
        out.push((
            (lower, upper),
            g.section_group(series.term(lower), series.term(upper))?,
        ));
    }
    Ok(out)
}

fn section_bounds(length: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in 1..length {
        out.push((n, n + 2));
        if 2 * n + 1 != n + 2 {
            out.push((n, 2 * n + 1));
        }
    }
    out
}

/// All fingerprint fields of `F_p[G]`.
pub fn fingerprint(alg: &GroupAlgebra, caps: Caps) -> Result<Fingerprint> {
    let g = alg.group();
    if g.order() > caps.order {
        return Err(Error::CapExceeded {
            what: "fingerprint group order",
            size: g.order() as u128,
            cap: caps.order as u128,
        });
    }
    let p = g.p();
    let exponent = g.exponent();
    let top = log_p(exponent as usize, p);
    let series = g.dimension_subgroups()?;

    let (kernel_sizes, rest) = std::thread::scope(|scope| {
        let kernel = scope.spawn(|| kernel_sizes(alg, caps.kernel));
        let rest = (|| -> Result<_> {
            let dim_quotients = (1..series.length())
                .map(|i| g.abelian_section_type(series.term(i), series.term(i + 1)))
                .collect::<Result<Vec<_>>>()?;
            let (derived, _) = g.subgroup_as_group(&g.derived_subgroup())?;
            let dseries = derived.dimension_subgroups()?;
            let derived_dim_quotients = (1..dseries.length())
                .map(|i| derived.abelian_section_type(dseries.term(i), dseries.term(i + 1)))
                .collect::<Result<Vec<_>>>()?;
            let center_sections = (0..=top)
                .map(|n| center_sections(g, n))
                .collect::<Result<Vec<_>>>()?;
            let kuelshammer_counts = (0..=top)
                .map(|n| kuelshammer_count(alg, n))
                .collect::<Result<Vec<_>>>()?;
            let pm_counts = (0..=top)
                .map(|n| pm_count(alg, n))
                .collect::<Result<Vec<_>>>()?;
            let omega1 = g.omega(&g.center(), 1)?;
            let meet = g.intersection(&omega1, &g.frattini())?;
            let elem_factor_order = (omega1.order() / meet.order()) as u64;
            let dimension_sections = section_bounds(series.length())
                .into_iter()
                .map(|(a, b)| surrogate(g, &series, a, b))
                .collect::<Result<Vec<_>>>()?;
            Ok((
                dim_quotients,
                derived_dim_quotients,
                center_sections,
                kuelshammer_counts,
                pm_counts,
                elem_factor_order,
                dimension_sections,
                roggenkamp_parameter(g)?,
                g.maximal_elementary_abelian_classes(),
            ))
        })();
        (kernel.join().expect("kernel size thread"), rest)
    });
    let (
        dim_quotients,
        derived_dim_quotients,
        center_sections,
        kuelshammer_counts,
        pm_counts,
        elem_factor_order,
        dimension_sections,
        roggenkamp,
        quillen_counts,
    ) = rest?;

    Ok(Fingerprint {
        p,
        order: g.order() as u64,
        exponent,
        abelianization: g.abelian_section_type(&g.whole(), &g.derived_subgroup())?,
        center: g.abelian_type(&g.center())?,
        dim_quotients,
        center_sections,
        derived_dim_quotients,
        kuelshammer_counts,
        pm_counts,
        kernel_sizes: kernel_sizes?,
        quillen_counts,
        roggenkamp,
        elem_factor_order,
        dimension_sections,
    })
}

/// Kernel sizes for every layer `i` and power `s >= 1` with `i p^s` below
/// the nilpotency index; larger powers vanish identically.
fn kernel_sizes(alg: &GroupAlgebra, cap: u64) -> Result<BTreeMap<String, Option<u64>>> {
    let jennings = jennings_basis(alg)?;
    let t = alg.nilpotency_index();
    let p = alg.p() as usize;
    let mut sizer = KernelSizer::new(alg, &jennings, cap);
    let mut out = BTreeMap::new();
    for i in 1..t {
        let mut s_max = 0u32;
        while i * p.pow(s_max + 1) < t {
            s_max += 1;
        }
        if s_max == 0 {
            continue;
        }
        let counts = sizer.layer_counts(i, s_max)?;
        for s in 1..=s_max {
            out.insert(
                format!("{i},{s}"),
                counts.as_ref().map(|c| c[s as usize - 1]),
            );
        }
    }
    Ok(out)
}
