//! Built-in diagrams and algebras used by the test suites and the CLI.

use crate::biquandle::{
    make_alexander, make_conjugation, make_group_pair, make_quaternion, make_wada, Biquandle,
    WadaVariant,
};
use crate::diagram::{parse_diagram, Diagram};
use crate::gfamily::{
    associated_mcb, make_gfamily_alexander, make_gfamily_generalized, zfamily_from_biquandle,
    GFamily,
};
use crate::group::FiniteGroup;
use crate::mcb::{Mcb, McbTables};
use crate::table::OpTable;

pub const DIAGRAM_FILES: [(&str, &str); 7] = [
    ("circle", include_str!("../corpus/circle.dgm")),
    ("theta", include_str!("../corpus/theta.dgm")),
    ("handcuff", include_str!("../corpus/handcuff.dgm")),
    ("kinked_theta", include_str!("../corpus/kinked_theta.dgm")),
    ("r2_theta", include_str!("../corpus/r2_theta.dgm")),
    ("knotted_theta", include_str!("../corpus/knotted_theta.dgm")),
    ("r3_theta", include_str!("../corpus/r3_theta.dgm")),
];

pub fn diagram(name: &str) -> Option<Diagram> {
    DIAGRAM_FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_diagram(text).expect("corpus diagram is valid"))
}

pub fn diagrams() -> Vec<(&'static str, Diagram)> {
    DIAGRAM_FILES
        .iter()
        .map(|&(n, text)| (n, parse_diagram(text).expect("corpus diagram is valid")))
        .collect()
}

fn units(m: u64) -> Vec<i64> {
    (1..m as i64)
        .filter(|&u| num_integer::gcd(u, m as i64) == 1)
        .collect()
}

/// Resolves `Z<n>`, `D<n>` (order 2n), `S3`, `S4` and `1`.
pub fn named_group(name: &str) -> Option<FiniteGroup> {
    let num = |s: &str| s.parse::<usize>().ok().filter(|&n| n > 0);
    match name {
        "1" => Some(FiniteGroup::trivial()),
        "S3" => Some(FiniteGroup::symmetric(3)),
        "S4" => Some(FiniteGroup::symmetric(4)),
        _ => {
            if let Some(n) = name.strip_prefix('Z').and_then(num) {
                Some(FiniteGroup::cyclic(n))
            } else {
                name.strip_prefix('D')
                    .and_then(num)
                    .map(FiniteGroup::dihedral)
            }
        }
    }
}

/// The inversion action of Z2 on an abelian group.
fn inversion_action(x: &FiniteGroup) -> Vec<Vec<usize>> {
    vec![
        (0..x.order()).collect(),
        (0..x.order()).map(|a| x.inv(a)).collect(),
    ]
}

pub fn gfamilies() -> Vec<(String, GFamily)> {
    let z2 = FiniteGroup::cyclic(2);
    let z4 = FiniteGroup::cyclic(4);
    let z3 = FiniteGroup::cyclic(3);
    let z5 = FiniteGroup::cyclic(5);
    vec![
        (
            "gfam-alex Z2 m3 [1,2]".into(),
            make_gfamily_alexander(&z2, &[0, 0], 3, &[1, 2]).unwrap(),
        ),
        (
            "gfam-alex Z2 phi=id m5 [1,4]".into(),
            make_gfamily_alexander(&z2, &[0, 1], 5, &[1, 4]).unwrap(),
        ),
        (
            "gfam-alex Z4 m5 [1,2,4,3]".into(),
            make_gfamily_alexander(&z4, &[0, 0, 0, 0], 5, &[1, 2, 4, 3]).unwrap(),
        ),
        (
            "gfam-gen Z2 on Z3".into(),
            make_gfamily_generalized(&z2, &[0, 0], &z3, &inversion_action(&z3)).unwrap(),
        ),
        (
            "gfam-gen Z2 phi=id on Z5".into(),
            make_gfamily_generalized(&z2, &[0, 1], &z5, &inversion_action(&z5)).unwrap(),
        ),
    ]
}

/// Every generator output of the axiom suite.
pub fn biquandles() -> Vec<(String, Biquandle)> {
    let mut out = Vec::new();
    for m in 2..=7u64 {
        for &s in &units(m) {
            for &t in &units(m) {
                out.push((
                    format!("alexander Z{m} s={s} t={t}"),
                    make_alexander(m, s, t).unwrap(),
                ));
            }
        }
    }
    for g in ["Z2", "Z3", "Z4", "S3"] {
        for v in [WadaVariant::One, WadaVariant::Two, WadaVariant::Three] {
            out.push((
                format!("wada {g} {v:?}"),
                make_wada(&named_group(g).unwrap(), v),
            ));
        }
    }
    for m in [2, 3] {
        out.push((format!("quaternion m={m}"), make_quaternion(m).unwrap()));
    }
    for g in ["Z2", "Z4", "S3"] {
        let grp = named_group(g).unwrap();
        let over = OpTable::projection(grp.order());
        out.push((
            format!("conjugation {g}"),
            make_conjugation(&grp, &over).unwrap(),
        ));
    }
    out.push((
        "group-pair Z3 m=1 n=1".into(),
        make_group_pair(&FiniteGroup::cyclic(3), 1, 1),
    ));
    out.push((
        "group-pair S3 m=1 n=2".into(),
        make_group_pair(&FiniteGroup::symmetric(3), 1, 2),
    ));
    out
}

/// A small set of biquandles whose Z-families stay at desk scale.
pub fn small_biquandles() -> Vec<(String, Biquandle)> {
    vec![
        (
            "alexander Z5 s=2 t=3".into(),
            make_alexander(5, 2, 3).unwrap(),
        ),
        (
            "alexander Z3 s=2 t=1".into(),
            make_alexander(3, 2, 1).unwrap(),
        ),
        (
            "wada Z3 One".into(),
            make_wada(&FiniteGroup::cyclic(3), WadaVariant::One),
        ),
        (
            "conjugation S3".into(),
            make_conjugation(&FiniteGroup::symmetric(3), &OpTable::projection(6)).unwrap(),
        ),
    ]
}

/// MCBs with at most 24 elements.
pub fn mcbs() -> Vec<(String, Mcb)> {
    let mut out: Vec<(String, Mcb)> = Vec::new();
    for g in ["1", "Z2", "Z3", "Z4", "S3"] {
        out.push((
            format!("conjugation {g}"),
            Mcb::conjugation(&named_group(g).unwrap()),
        ));
    }
    let z4 = FiniteGroup::cyclic(4);
    let sign = OpTable::from_fn(4, |x, a| if a % 2 == 0 { x } else { (4 - x) % 4 });
    let twisted = make_conjugation(&z4, &sign).unwrap();
    let tables = McbTables::from_groups(
        twisted.under_table().clone(),
        sign,
        vec![(0..4).collect()],
        vec![z4],
    )
    .unwrap();
    out.push(("twisted Z4".into(), Mcb::new(tables).unwrap()));
    for (name, f) in gfamilies() {
        out.push((format!("associated {name}"), associated_mcb(&f).unwrap()));
    }
    for (name, x) in small_biquandles() {
        let f = zfamily_from_biquandle(&x);
        if f.carrier_size() * f.group().order() <= 24 {
            out.push((format!("z-family {name}"), associated_mcb(&f).unwrap()));
        }
    }
    out
}
