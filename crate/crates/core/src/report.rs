//! The one-shot reproduction report: every acceptance check, with expected
//! and computed values, timings and the data checksum.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::coxeter::{diagram_symmetries, finite_volume_check, isomorphic};
use crate::cusp_cone::{
    conjugacy_classes, enumerate_anti_involutions, enumerate_isometries, format_angle, glue_cone,
    wedge_quotient, witnesses,
};
use crate::data::{Dataset, ReferenceData, LATTICE_NAMES};
use crate::error::{Error, Result};
use crate::fixed_points::{verify_basis, ZQuadraticLattice};
use crate::lattices::{check_isometry, is_anti_isometry, AntiIsometry};
use crate::matrix::{hermitian_form, ZMat};
use crate::mod2::{
    build_w_bijection, check_well_defined, cycle_type_with_transpositions, generate_group,
    induced_involution, involution_invariants, orthogonal_group, s8_invariants, transported_s8,
    F2QuadraticSpace,
};
use crate::scalars::GaussInt;
use crate::stabilizer::{
    discriminant_walls, format_relation, maps_fix_to_fix_i, projective_square, solve_type_two,
    stab_structure, witness_conditions_hold, Certificate,
};
use crate::vinberg::{coxeter_diagram, enumerate_roots, vinberg, Root, VinbergOptions};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    pub runtime_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReproductionReport {
    pub source: String,
    pub checksum: String,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
}

impl ReproductionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Data(e.to_string()))
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Same report with runtimes zeroed, for byte-for-byte comparisons.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        r.checks.iter_mut().for_each(|c| c.runtime_ms = 0.0);
        r
    }
}

impl fmt::Display for ReproductionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "data: {} (sha256 {})", self.source, self.checksum)?;
        for c in &self.checks {
            writeln!(
                f,
                "[{}] {:<22} {}: expected {}; computed {} ({:.1} ms)",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                c.anchor,
                c.expected,
                c.computed,
                c.runtime_ms
            )?;
        }
        let failed = self.failures().count();
        write!(
            f,
            "{} of {} checks passed",
            self.checks.len() - failed,
            self.checks.len()
        )?;
        if failed > 0 {
            write!(
                f,
                "; failing: {}",
                self.failures()
                    .map(|c| c.id.as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            )?;
        }
        writeln!(f)
    }
}

/// Check groups in report order, with the names accepted by `--only`.
pub const GROUPS: [(&str, &str); 9] = [
    ("fix", "fixed-lattice bases"),
    ("vinberg", "fundamental-root diagrams"),
    ("relation", "root relation in the L2 chamber"),
    ("mod2", "mod-2 involution invariants"),
    ("orthogonal", "O(V,q) and the transported S8"),
    ("type2", "type-II stabilizer elements"),
    ("wall", "discriminant wall of L4"),
    ("cone", "cuspidal cone"),
    ("oracle", "root enumeration oracle and form axioms"),
];

/// Resolves a group name or its number `1..=9`.
pub fn group_index(name: &str) -> Result<usize> {
    if let Ok(k) = name.parse::<usize>() {
        if (1..=GROUPS.len()).contains(&k) {
            return Ok(k - 1);
        }
    }
    GROUPS
        .iter()
        .position(|(g, _)| *g == name)
        .ok_or_else(|| Error::UnknownName(format!("check group {name:?}")))
}

struct Group<'a> {
    number: usize,
    anchor: &'a str,
    records: Vec<CheckRecord>,
}

impl Group<'_> {
    fn check(
        &mut self,
        id: &str,
        expected: impl Into<String>,
        f: impl FnOnce() -> Result<(String, bool)>,
    ) {
        let t = Instant::now();
        let (computed, pass) = f().unwrap_or_else(|e| (format!("error: {e}"), false));
        self.records.push(CheckRecord {
            id: format!("{}.{}", self.number, id),
            anchor: self.anchor.to_string(),
            expected: expected.into(),
            computed,
            pass,
            runtime_ms: t.elapsed().as_secs_f64() * 1e3,
        });
    }
}

/// Runs the selected groups (all when `only` is empty). Groups run on up to
/// `threads` worker threads; records are ordered by check id.
pub fn run_checks(ds: &Dataset, only: &[String], threads: usize) -> Result<ReproductionReport> {
    let mut selected: Vec<usize> = if only.is_empty() {
        (0..GROUPS.len()).collect()
    } else {
        only.iter().map(|s| group_index(s)).collect::<Result<_>>()?
    };
    selected.sort_unstable();
    selected.dedup();
    let data = &ds.data;
    let threads = threads.max(1);
    let mut results: Vec<(usize, Vec<CheckRecord>)> = Vec::new();
    if threads == 1 {
        for &g in &selected {
            results.push((g, run_group(data, g, 1)));
        }
    } else {
        std::thread::scope(|s| {
            for chunk in selected.chunks(threads) {
                let handles: Vec<_> = chunk
                    .iter()
                    .map(|&g| (g, s.spawn(move || run_group(data, g, 1))))
                    .collect();
                for (g, h) in handles {
                    results.push((g, h.join().expect("check group panicked")));
                }
            }
        });
    }
    results.sort_by_key(|(g, _)| *g);
    let checks: Vec<CheckRecord> = results.into_iter().flat_map(|(_, r)| r).collect();
    let pass = !checks.is_empty() && checks.iter().all(|c| c.pass);
    Ok(ReproductionReport {
        source: ds.source.clone(),
        checksum: ds.checksum.clone(),
        checks,
        pass,
    })
}

fn run_group(data: &ReferenceData, g: usize, threads: usize) -> Vec<CheckRecord> {
    let mut group = Group {
        number: g + 1,
        anchor: GROUPS[g].1,
        records: Vec::new(),
    };
    match g {
        0 => fix_checks(data, &mut group),
        1 => vinberg_checks(data, &mut group, threads),
        2 => relation_checks(data, &mut group),
        3 => mod2_checks(data, &mut group),
        4 => orthogonal_checks(data, &mut group),
        5 => type2_checks(data, &mut group, threads),
        6 => wall_checks(data, &mut group, threads),
        7 => cone_checks(data, &mut group),
        _ => oracle_checks(data, &mut group),
    }
    group.records
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn fix_checks(data: &ReferenceData, g: &mut Group) {
    for (i, name) in LATTICE_NAMES.iter().enumerate() {
        g.check(
            &format!("fix.{name}"),
            "columns fixed, Gram equal, index 1",
            || {
                let lam = data.lambda()?;
                let r = verify_basis(i, &lam, &data.anti(i), &data.basis(i), data.gram(i));
                let describe = |x: &std::result::Result<(), String>| {
                    x.clone().err().unwrap_or_else(|| "ok".into())
                };
                let index = match &r.index_in_fix {
                    Ok(s) => s.clone(),
                    Err(e) => e.clone(),
                };
                let s = format!(
                    "columns {}, Gram {}, index {}",
                    describe(&r.columns_fixed),
                    describe(&r.gram_matches),
                    index
                );
                Ok((s, r.passed()))
            },
        );
    }
}

const NODE_COUNTS: [usize; 5] = [6, 7, 7, 8, 6];

fn vinberg_checks(data: &ReferenceData, g: &mut Group, threads: usize) {
    for (i, name) in LATTICE_NAMES.iter().enumerate() {
        let expected_inv = usize::from(i == 2 || i == 3);
        g.check(
            &format!("vinberg.{name}"),
            format!(
                "{} nodes, finite volume, isomorphic to reference; 0 norm-respecting symmetries, {} norm-ignoring involution(s)",
                NODE_COUNTS[i], expected_inv
            ),
            || {
                data.check_consistent(i)?;
                let li = data.fixed_lattice(i);
                let run = vinberg(&li, &data.vinberg_options(i, threads))?;
                let d = coxeter_diagram(&li, &run.roots)?;
                let fv = finite_volume_check(&d, li.rank() - 1);
                let iso = isomorphic(&d, &data.diagram(i)?, true).is_some();
                let strict = diagram_symmetries(&d, true).into_iter().filter(|s| !s.is_identity()).count();
                let loose: Vec<_> = diagram_symmetries(&d, false).into_iter().filter(|s| !s.is_identity()).collect();
                let involutions = loose.iter().filter(|s| s.is_involution()).count();
                let s = format!(
                    "{} nodes, finite volume {}, isomorphic {}; {} norm-respecting, {} norm-ignoring ({} involutions)",
                    d.len(),
                    yes(fv),
                    yes(iso),
                    strict,
                    loose.len(),
                    involutions
                );
                let pass = d.len() == NODE_COUNTS[i]
                    && fv
                    && iso
                    && strict == 0
                    && loose.len() == expected_inv
                    && involutions == expected_inv;
                Ok((s, pass))
            },
        );
    }
}

fn relation_checks(data: &ReferenceData, g: &mut Group) {
    g.check("relation.L2", "r7 = r2 + 2r3 - r4 - r5 + r6", || {
        data.check_consistent(2)?;
        let roots = data
            .coordinate_roots(2)?
            .ok_or_else(|| Error::Data("no L2 roots".into()))?;
        if roots.len() != 7 {
            return Err(Error::Dimension {
                expected: 7,
                got: roots.len(),
            });
        }
        let coeffs = [0i64, 1, 2, -1, -1, 1];
        let rhs: Vec<BigInt> = (0..roots[0].len())
            .map(|k| {
                coeffs
                    .iter()
                    .zip(&roots)
                    .map(|(c, r)| &r[k] * BigInt::from(*c))
                    .sum()
            })
            .collect();
        let holds = rhs == roots[6];
        let l2 = data.fixed_lattice(2);
        let norms: Vec<String> = roots.iter().map(|r| l2.q(r).to_string()).collect();
        Ok((
            format!("relation holds {}; norms {}", yes(holds), norms.join(", ")),
            holds,
        ))
    });
}

const PHI_TABLE: [(usize, usize); 5] = [(6, 28), (5, 16), (4, 8), (3, 4), (4, 4)];

fn table_string(rows: &[(usize, usize)]) -> String {
    rows.iter()
        .map(|(a, b)| format!("({a},{b})"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn mod2_checks(data: &ReferenceData, g: &mut Group) {
    g.check("mod2.phi", table_string(&PHI_TABLE), || {
        let lam = data.lambda()?;
        let sp = F2QuadraticSpace::from_lattice(&lam)?;
        let rows: Vec<(usize, usize)> = (0..5)
            .map(|i| {
                Ok(involution_invariants(
                    &sp,
                    &induced_involution(&data.anti(i))?,
                ))
            })
            .collect::<Result<_>>()?;
        Ok((table_string(&rows), rows == PHI_TABLE))
    });
    g.check(
        "mod2.s8",
        format!(
            "{}; 2x32 fixed even subsets for one transposition",
            table_string(&PHI_TABLE)
        ),
        || {
            let rows: Vec<(usize, usize)> = (0..5)
                .map(|t| {
                    s8_invariants(&cycle_type_with_transpositions(t))
                        .map(|s| (s.dim_fix, s.norm_one_fixed))
                })
                .collect::<Result<_>>()?;
            let one = s8_invariants(&cycle_type_with_transpositions(1))?;
            let s = format!(
                "{}; {} fixed even subsets",
                table_string(&rows),
                one.fixed_even_subsets
            );
            Ok((s, rows == PHI_TABLE && one.fixed_even_subsets == 2 * 32))
        },
    );
}

fn orthogonal_checks(data: &ReferenceData, g: &mut Group) {
    g.check(
        "orthogonal.q",
        "28 vectors with q = 1, q well defined and nondegenerate",
        || {
            let lam = data.lambda()?;
            let sp = F2QuadraticSpace::from_lattice(&lam)?;
            let ones = sp.norm_one_vectors().len();
            let wd = check_well_defined(&lam, &sp)?;
            let nd = sp.is_nondegenerate();
            Ok((
                format!(
                    "{ones} ones, well defined {}, nondegenerate {}",
                    yes(wd),
                    yes(nd)
                ),
                ones == 28 && wd && nd,
            ))
        },
    );
    g.check(
        "orthogonal.group",
        "|O(V,q)| = 40320 = |transported S8|, equal as sets",
        || {
            let lam = data.lambda()?;
            let sp = F2QuadraticSpace::from_lattice(&lam)?;
            let o = orthogonal_group(&sp);
            let wb = build_w_bijection(&sp)?;
            let s8 = generate_group(&transported_s8(&wb));
            let eq = o == s8;
            Ok((
                format!("{} / {}, equal {}", o.len(), s8.len(), yes(eq)),
                o.len() == 40320 && eq,
            ))
        },
    );
}

fn perm_of(data: &ReferenceData, i: usize) -> Result<&Vec<usize>> {
    data.symmetry(i)
        .ok_or_else(|| Error::Data(format!("no symmetry for {}", LATTICE_NAMES[i])))
}

fn type2_checks(data: &ReferenceData, g: &mut Group, threads: usize) {
    g.check(
        "type2.L2",
        "no witness; forced relation 2·r3 - r4 = 0, false in the lattice",
        || {
            let lam = data.lambda()?;
            let roots = data
                .lambda_roots(2)
                .ok_or_else(|| Error::Data("no L2 roots".into()))?;
            let out = solve_type_two(&lam, &roots, perm_of(data, 2)?, None)?;
            let mut relations = Vec::new();
            let mut pass = out.witness.is_none() && !out.attempts.is_empty();
            for a in &out.attempts {
                match &a.certificate {
                    Some(Certificate::Inconsistent {
                        relation,
                        relation_holds,
                        ..
                    }) => {
                        let r = format_relation(relation);
                        pass &= r == "2·r3 - r4 = 0" && !relation_holds;
                        relations.push(format!("ε={}: {r}", a.epsilon));
                    }
                    other => {
                        pass = false;
                        relations.push(format!(
                            "ε={}: {:?}",
                            a.epsilon,
                            other.as_ref().map(|c| c.describe())
                        ));
                    }
                }
            }
            let w = if out.witness.is_some() {
                "witness found"
            } else {
                "no witness"
            };
            Ok((format!("{w}; {}", relations.join("; ")), pass))
        },
    );
    g.check(
        "type2.L3",
        "witness T: isometry, 8 conditions, projective order 2, Fix(χ3) onto Fix(iχ3)",
        || {
            let lam = data.lambda()?;
            let roots = data
                .lambda_roots(3)
                .ok_or_else(|| Error::Data("no L3 roots".into()))?;
            let out = solve_type_two(&lam, &roots, perm_of(data, 3)?, None)?;
            let Some(w) = out.witness else {
                let why: Vec<String> = out
                    .attempts
                    .iter()
                    .filter_map(|a| a.certificate.as_ref().map(|c| c.describe()))
                    .collect();
                return Ok((format!("no witness: {}", why.join("; ")), false));
            };
            let iso = check_isometry(&lam, &w.t).passed();
            let cond = witness_conditions_hold(&lam, &w, &roots);
            let sq = projective_square(&w.t);
            let fix = maps_fix_to_fix_i(&data.anti(3), &w.t)?;
            let s = format!(
                "ε={}, isometry {}, {} conditions {}, T² = {}·I, Fix map {}",
                w.epsilon,
                yes(iso),
                roots.len(),
                if cond { "hold" } else { "fail" },
                sq.as_ref().map_or("?".to_string(), |u| u.to_string()),
                yes(fix)
            );
            Ok((
                s,
                iso && cond && sq.is_some() && !w.t.is_identity() && roots.len() == 8 && fix,
            ))
        },
    );
    g.check(
        "type2.structure",
        "equal/equal/equal/semidirect/equal",
        || {
            let names: Vec<&str> = (0..5)
                .map(|i| {
                    data.check_consistent(i)?;
                    stab_structure(data, i, threads).map(|r| r.structure.name())
                })
                .collect::<Result<_>>()?;
            let s = names.join("/");
            let pass = s == "equal/equal/equal/semidirect/equal";
            Ok((s, pass))
        },
    );
}

/// Embeds the Vinberg roots of `L_i` into Λ.
fn lambda_images(li: &ZQuadraticLattice, roots: &[Root]) -> Result<Vec<Vec<GaussInt>>> {
    roots
        .iter()
        .map(|r| li.embed(&r.coords).ok_or(Error::NotInLattice))
        .collect()
}

fn wall_checks(data: &ReferenceData, g: &mut Group, threads: usize) {
    g.check(
        "wall.L4",
        "exactly one root (1+i)w, w primitive, q(w) = -2",
        || {
            data.check_consistent(4)?;
            let lam = data.lambda()?;
            let l4 = data.fixed_lattice(4);
            let run = vinberg(&l4, &data.vinberg_options(4, threads))?;
            let hits = discriminant_walls(&lam, &lambda_images(&l4, &run.roots)?);
            let default_run = vinberg(
                &l4,
                &VinbergOptions {
                    threads,
                    ..VinbergOptions::default()
                },
            )?;
            let default_hits = discriminant_walls(&lam, &lambda_images(&l4, &default_run.roots)?);
            let v0: Vec<String> = run.v0.iter().map(|x| x.to_string()).collect();
            let s = format!(
                "{} wall(s) in the chamber of v0 = ({}); {} in the chamber of the default v0",
                hits.len(),
                v0.join(", "),
                default_hits.len()
            );
            Ok((s, hits.len() == 1))
        },
    );
}

fn compact(m: &ZMat) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| {
            format!(
                "[{}]",
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn diag2(a: i64, b: i64) -> ZMat {
    ZMat::from_i64(&[&[a, 0], &[0, b]])
}

fn cone_checks(data: &ReferenceData, g: &mut Group) {
    let setup = || -> Result<_> {
        let lz = data.lz()?;
        let group = enumerate_isometries(&lz)?;
        Ok((lz, group))
    };
    g.check("cone.isometries", "|Isom(Lz)| = 96", || {
        let (_, group) = setup()?;
        Ok((
            format!("{}, closed {}", group.order(), yes(group.is_closed())),
            group.order() == 96 && group.is_closed(),
        ))
    });
    g.check(
        "cone.anti-involutions",
        "36, including κ1 and κ3; 2 conjugacy classes",
        || {
            let (lz, group) = setup()?;
            let k1 = AntiIsometry::new(data.kappa1.clone());
            let k3 = AntiIsometry::new(data.kappa3.clone());
            let antis = enumerate_anti_involutions(&lz, &group, &k1)?;
            let all_valid = antis
                .iter()
                .all(|c| is_anti_isometry(&lz, &c.matrix).passed() && c.is_involutive());
            let classes = conjugacy_classes(&group, &antis);
            let sizes: Vec<String> = classes.iter().map(|c| c.len().to_string()).collect();
            let has = antis.contains(&k1) && antis.contains(&k3);
            let s = format!(
                "{}, κ1 and κ3 present {}, {} classes of sizes {}",
                antis.len(),
                yes(has),
                classes.len(),
                sizes.join("+")
            );
            Ok((
                s,
                antis.len() == 36 && all_valid && has && classes.len() == 2,
            ))
        },
    );
    let wedges = || -> Result<_> {
        let (lz, group) = setup()?;
        let v = |n: &str| data.cone_vector(n).cloned();
        let w1 = wedge_quotient(
            &lz,
            &group,
            &AntiIsometry::new(data.kappa1.clone()),
            Some([v("u1")?, v("u2")?]),
        )?;
        let w3 = wedge_quotient(
            &lz,
            &group,
            &AntiIsometry::new(data.kappa3.clone()),
            Some([v("v2")?, v("v3")?]),
        )?;
        Ok((group, w1, w3))
    };
    g.check("cone.fix-grams", "diag(-4,-2) and diag(-2,-2)", || {
        let (_, w1, w3) = wedges()?;
        Ok((
            format!("{} and {}", compact(&w1.gram), compact(&w3.gram)),
            w1.gram == diag2(-4, -2) && w3.gram == diag2(-2, -2),
        ))
    });
    g.check("cone.wedges", "π/2 and π/4, edges on mirrors", || {
        let (_, w1, w3) = wedges()?;
        let half = BigRational::new(1.into(), 2.into());
        let quarter = BigRational::new(1.into(), 4.into());
        let s = format!(
            "{} ({} elements) and {} ({} elements)",
            format_angle(&w1.angle),
            w1.image.len(),
            format_angle(&w3.angle),
            w3.image.len()
        );
        Ok((s, w1.angle == half && w3.angle == quarter))
    });
    g.check(
        "cone.witnesses",
        "A1: v3 to u1, A2: v2 to u2, both isometries of Lz",
        || {
            let (lz, group) = setup()?;
            let v = |n: &str| data.cone_vector(n);
            let a1 = witnesses(&group, v("v3")?, v("u1")?);
            let a2 = witnesses(&group, v("v2")?, v("u2")?);
            let ok1 = a1.contains(&data.cone_a1) && check_isometry(&lz, &data.cone_a1).passed();
            let ok2 = a2.contains(&data.cone_a2) && check_isometry(&lz, &data.cone_a2).passed();
            let s = format!(
                "A1 valid {} ({} witnesses), A2 valid {} ({} witnesses)",
                yes(ok1),
                a1.len(),
                yes(ok2),
                a2.len()
            );
            Ok((s, ok1 && ok2))
        },
    );
    g.check("cone.angle", "3/4 π, not of the form π/k", || {
        let (group, w1, w3) = wedges()?;
        let v = |n: &str| data.cone_vector(n).cloned();
        let (v3, u1, v2, u2) = (v("v3")?, v("u1")?, v("v2")?, v("u2")?);
        let cone = glue_cone(
            &group,
            vec![w1, w3],
            &[("v3", &v3, "u1", &u1), ("v2", &v2, "u2", &u2)],
        )?;
        let orb = cone.is_orbifold_angle();
        let s = format!(
            "{}, orbifold angle {}",
            format_angle(&cone.total_angle),
            yes(orb)
        );
        Ok((
            s,
            cone.total_angle == BigRational::new(3.into(), 4.into()) && !orb,
        ))
    });
}

/// Roots in the box `[-radius, radius]^n`, filtered from first principles
/// with machine integers.
pub fn boxed_roots(
    l: &ZQuadraticLattice,
    allowed: &[i64],
    height_bound: i64,
    v0: &[BigInt],
    radius: i64,
) -> Result<Vec<Vec<i64>>> {
    let n = l.rank();
    let conv = |x: &BigInt| {
        x.to_i64()
            .ok_or_else(|| Error::Data("entry does not fit in i64".into()))
    };
    let gram: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| conv(l.gram.get(i, j))).collect())
        .collect::<Result<_>>()?;
    let gv0: Vec<i64> = (0..n)
        .map(|i| {
            v0.iter()
                .enumerate()
                .map(|(j, x)| Ok(gram[i][j] * conv(x)?))
                .sum()
        })
        .collect::<Result<_>>()?;
    let mut x = vec![-radius; n];
    let mut out = Vec::new();
    loop {
        let gx: Vec<i64> = (0..n)
            .map(|i| (0..n).map(|j| gram[i][j] * x[j]).sum())
            .collect();
        let q: i64 = x.iter().zip(&gx).map(|(a, b)| a * b).sum();
        if allowed.contains(&q) {
            let a: i64 = x.iter().zip(&gv0).map(|(s, t)| s * t).sum();
            let oriented = a < 0 || (a == 0 && x.iter().find(|t| **t != 0).is_some_and(|t| *t > 0));
            let low = a * a <= height_bound * -q;
            let primitive = x.iter().fold(0i64, |g, &t| num_integer::gcd(g, t)) == 1;
            let cryst = gx.iter().all(|t| (2 * t) % q == 0);
            if oriented && low && primitive && cryst {
                out.push(x.clone());
            }
        }
        let mut k = 0;
        loop {
            if k == n {
                return Ok(out);
            }
            x[k] += 1;
            if x[k] <= radius {
                break;
            }
            x[k] = -radius;
            k += 1;
        }
    }
}

fn oracle_checks(data: &ReferenceData, g: &mut Group) {
    g.check(
        "oracle.roots",
        "enumeration equals the boxed brute force on L0 at height 2",
        || {
            data.check_consistent(0)?;
            let l0 = data.fixed_lattice(0);
            let opts = data.vinberg_options(0, 1);
            let v0 = match opts.v0 {
                Some(v) => v,
                None => crate::vinberg::find_v0(&l0)?,
            };
            let allowed = crate::vinberg::allowed_norms(&l0)?;
            let bound = BigRational::from_integer(BigInt::from(2));
            let fast: Vec<Vec<i64>> = enumerate_roots(&l0, &allowed, &bound, &v0, 1)?
                .iter()
                .map(|r| {
                    r.coords
                        .iter()
                        .map(|x| x.to_i64().unwrap_or(i64::MAX))
                        .collect()
                })
                .collect();
            let radius = 3;
            let mut slow = boxed_roots(&l0, &allowed, 2, &v0, radius)?;
            let mut fast_sorted = fast.clone();
            fast_sorted.sort();
            slow.sort();
            let outside = fast
                .iter()
                .filter(|x| x.iter().any(|t| t.abs() > radius))
                .count();
            let s = format!(
                "{} enumerated, {} in the box, {} outside it",
                fast.len(),
                slow.len(),
                outside
            );
            Ok((s, fast_sorted == slow && outside == 0 && !slow.is_empty()))
        },
    );
    g.check(
        "oracle.axioms",
        "h Hermitian and χ_i anti-isometric on a fixed vector grid",
        || {
            let lam = data.lambda()?;
            let units = [
                GaussInt::new(0, 0),
                GaussInt::new(1, 0),
                GaussInt::new(0, 1),
                GaussInt::new(-1, 1),
            ];
            let mut vectors = Vec::new();
            for k in 0..6 {
                for j in 0..6 {
                    for u in &units[1..] {
                        let mut v = vec![GaussInt::zero(); 6];
                        v[k] = u.clone();
                        v[j] = &v[j] + &units[(k + j) % 4];
                        vectors.push(v);
                    }
                }
            }
            let mut failures = 0usize;
            let mut pairs = 0usize;
            for x in &vectors {
                for y in vectors.iter().step_by(7) {
                    pairs += 1;
                    let hxy = hermitian_form(lam.gram(), x, y);
                    if hxy.conj() != hermitian_form(lam.gram(), y, x) {
                        failures += 1;
                    }
                    for i in 0..5 {
                        let chi = data.anti(i);
                        if hermitian_form(lam.gram(), &chi.apply(x), &chi.apply(y)) != hxy.conj() {
                            failures += 1;
                        }
                    }
                }
            }
            let norms_real = vectors
                .iter()
                .all(|v| hermitian_form(lam.gram(), v, v).im.is_zero());
            Ok((
                format!(
                    "{pairs} pairs, {failures} violations, norms real {}",
                    yes(norms_real)
                ),
                failures == 0 && norms_real,
            ))
        },
    );
}

/// Exit status for a finished report.
pub fn exit_code(r: &ReproductionReport) -> i32 {
    if r.pass {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_names() {
        assert_eq!(group_index("cone").unwrap(), 7);
        assert_eq!(group_index("8").unwrap(), 7);
        assert!(group_index("10").is_err());
        assert!(group_index("cones").is_err());
    }

    #[test]
    fn round_trip() {
        let r = ReproductionReport {
            source: "x".into(),
            checksum: "00".into(),
            checks: vec![CheckRecord {
                id: "1.fix.L0".into(),
                anchor: "a".into(),
                expected: "e".into(),
                computed: "c".into(),
                pass: true,
                runtime_ms: 1.5,
            }],
            pass: true,
        };
        assert_eq!(ReproductionReport::from_json(&r.to_json()).unwrap(), r);
    }
}
