use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use octica::coxeter::{diagram_symmetries, finite_volume_check, isomorphic};
use octica::cusp_cone::{
    conjugacy_classes, enumerate_anti_involutions, enumerate_isometries, glue_cone, wedge_quotient,
    witnesses,
};
use octica::data::{reference_data, ReferenceData, LATTICE_NAMES};
use octica::fixed_points::verify_basis;
use octica::lattices::{check_isometry, AntiIsometry};
use octica::matrix::{hermitian_form, ZMat};
use octica::mod2::{
    build_w_bijection, cycle_type_with_transpositions, generate_group, induced_involution,
    involution_invariants, orthogonal_group, reduce_vector, s8_invariants, transported_s8,
    F2QuadraticSpace,
};
use octica::report::boxed_roots;
use octica::scalars::GaussInt;
use octica::stabilizer::{
    discriminant_walls, format_relation, maps_fix_to_fix_i, projective_square, solve_type_two,
    stab_structure, witness_conditions_hold, Certificate,
};
use octica::vinberg::{
    allowed_norms, coxeter_diagram, enumerate_roots, find_v0, vinberg, Root, VinbergRun,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(
        elapsed < limit,
        format!("took {:.1?}, limit {:.0?}", elapsed, limit),
    )
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

const NODE_COUNTS: [usize; 5] = [6, 7, 7, 8, 6];

fn criterion_1(d: &ReferenceData) -> Outcome {
    let lam = d.lambda().map_err(s)?;
    for (i, name) in LATTICE_NAMES.iter().enumerate() {
        let r = verify_basis(i, &lam, &d.anti(i), &d.basis(i), d.gram(i));
        ensure(r.passed(), format!("{name}: {r:?}"))?;
    }
    Ok("B_i fixed by χ_i, Gram(B_i) = L_i, index 1 for all five".into())
}

fn criterion_2(d: &ReferenceData, runs: &mut Vec<VinbergRun>) -> Outcome {
    let start = Instant::now();
    let mut counts = Vec::new();
    for i in 0..5 {
        let li = d.fixed_lattice(i);
        let run = vinberg(&li, &d.vinberg_options(i, 1)).map_err(s)?;
        let dia = coxeter_diagram(&li, &run.roots).map_err(s)?;
        let name = LATTICE_NAMES[i];
        ensure(
            dia.len() == NODE_COUNTS[i],
            format!("{name}: {} nodes", dia.len()),
        )?;
        ensure(
            finite_volume_check(&dia, li.rank() - 1),
            format!("{name}: not of finite volume"),
        )?;
        ensure(
            isomorphic(&dia, &d.diagram(i).map_err(s)?, true).is_some(),
            format!("{name}: not isomorphic"),
        )?;
        let strict = diagram_symmetries(&dia, true)
            .into_iter()
            .filter(|x| !x.is_identity())
            .count();
        ensure(
            strict == 0,
            format!("{name}: {strict} norm-respecting symmetries"),
        )?;
        let loose: Vec<_> = diagram_symmetries(&dia, false)
            .into_iter()
            .filter(|x| !x.is_identity())
            .collect();
        let want = usize::from(i == 2 || i == 3);
        ensure(
            loose.len() == want && loose.iter().all(|x| x.is_involution()),
            format!("{name}: {} norm-ignoring symmetries", loose.len()),
        )?;
        counts.push(dia.len().to_string());
        runs.push(run);
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(300))?;
    Ok(format!(
        "nodes {}, rigid with norms, involutions on L2 and L3 only ({elapsed:.1?})",
        counts.join(",")
    ))
}

/// `r7 = r2 + 2r3 − r4 − r5 + r6`, on the stored roots and on the computed
/// chamber read through its unique norm-respecting isomorphism to the reference.
fn criterion_3(d: &ReferenceData, l2_run: &VinbergRun) -> Outcome {
    let coeffs = [0i64, 1, 2, -1, -1, 1];
    let holds = |r: &[Vec<BigInt>]| {
        (0..r[0].len()).all(|k| {
            coeffs
                .iter()
                .zip(r)
                .map(|(c, v)| &v[k] * BigInt::from(*c))
                .sum::<BigInt>()
                == r[6][k]
        })
    };
    let stored = d
        .coordinate_roots(2)
        .map_err(s)?
        .ok_or("no stored L2 roots")?;
    ensure(
        stored.len() == 7 && holds(&stored),
        "fails on the stored roots",
    )?;

    let li = d.fixed_lattice(2);
    let dia = coxeter_diagram(&li, &l2_run.roots).map_err(s)?;
    let stored_roots: Vec<Root> = stored
        .iter()
        .map(|c| Root {
            coords: c.clone(),
            norm: li.q(c).to_i64().unwrap_or(0),
            height: BigRational::from_integer(0.into()),
        })
        .collect();
    let stored_dia = coxeter_diagram(&li, &stored_roots).map_err(s)?;
    let perm = isomorphic(&dia, &stored_dia, true)
        .ok_or("computed L2 diagram not isomorphic to the stored roots")?;
    let mut relabelled = vec![Vec::new(); 7];
    for (i, &t) in perm.iter().enumerate() {
        relabelled[t] = l2_run.roots[i].coords.clone();
    }
    // the stored roots are not uniformly oriented; match signs through the Gram matrix
    let gram = |r: &[Vec<BigInt>]| -> Vec<BigInt> {
        r.iter()
            .flat_map(|x| r.iter().map(|y| li.inner(x, y)))
            .collect()
    };
    let target = gram(&stored);
    let mut masks: Vec<u32> = (0..1 << 7).collect();
    masks.sort_by_key(|m| m.count_ones());
    let signed = masks
        .into_iter()
        .map(|mask| -> Vec<Vec<BigInt>> {
            relabelled
                .iter()
                .enumerate()
                .map(|(k, v)| {
                    if mask & (1 << k) != 0 {
                        v.iter().map(|x| -x).collect()
                    } else {
                        v.clone()
                    }
                })
                .collect()
        })
        .find(|r| gram(r) == target)
        .ok_or("no sign choice matches the stored Gram matrix")?;
    let flipped: Vec<String> = (0..7)
        .filter(|&k| signed[k] != relabelled[k])
        .map(|k| format!("r{}", k + 1))
        .collect();
    ensure(holds(&signed), "fails on the computed roots")?;
    Ok(format!(
        "holds on stored and computed L2 roots (stored orientation differs on {})",
        flipped.join(", ")
    ))
}

fn criterion_4(d: &ReferenceData) -> Outcome {
    let start = Instant::now();
    let table = [(6, 28), (5, 16), (4, 8), (3, 4), (4, 4)];
    let sp = F2QuadraticSpace::from_lattice(&d.lambda().map_err(s)?).map_err(s)?;
    let phi: Vec<(usize, usize)> = (0..5)
        .map(|i| induced_involution(&d.anti(i)).map(|p| involution_invariants(&sp, &p)))
        .collect::<Result<_, _>>()
        .map_err(s)?;
    ensure(phi == table, format!("φ invariants {phi:?}"))?;
    let s8: Vec<(usize, usize)> = (0..5)
        .map(|t| {
            s8_invariants(&cycle_type_with_transpositions(t)).map(|x| (x.dim_fix, x.norm_one_fixed))
        })
        .collect::<Result<_, _>>()
        .map_err(s)?;
    ensure(s8 == table, format!("s8 table {s8:?}"))?;
    let even = s8_invariants(&cycle_type_with_transpositions(1))
        .map_err(s)?
        .fixed_even_subsets;
    ensure(even == 2 * 32, format!("{even} fixed even subsets"))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!(
        "φ and s8 tables agree, 2×32 fixed even subsets ({elapsed:.1?})"
    ))
}

fn criterion_5(d: &ReferenceData) -> Outcome {
    let start = Instant::now();
    let sp = F2QuadraticSpace::from_lattice(&d.lambda().map_err(s)?).map_err(s)?;
    let ones = sp.norm_one_vectors().len();
    ensure(ones == 28, format!("{ones} vectors with q = 1"))?;
    let o = orthogonal_group(&sp);
    let s8 = generate_group(&transported_s8(&build_w_bijection(&sp).map_err(s)?));
    ensure(o.len() == 40320, format!("|O(V,q)| = {}", o.len()))?;
    ensure(o == s8, "O(V,q) differs from the transported S8")?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("|O(V,q)| = 40320 = S8, 28 ones ({elapsed:.1?})"))
}

fn criterion_6(d: &ReferenceData) -> Outcome {
    let start = Instant::now();
    let lam = d.lambda().map_err(s)?;
    let r2 = d.lambda_roots(2).ok_or("no L2 roots")?;
    let out = solve_type_two(&lam, &r2, d.symmetry(2).ok_or("no L2 symmetry")?, None).map_err(s)?;
    ensure(
        out.witness.is_none() && !out.attempts.is_empty(),
        "χ2 has a witness",
    )?;
    for a in &out.attempts {
        match &a.certificate {
            Some(Certificate::Inconsistent {
                relation,
                relation_holds: false,
                ..
            }) if format_relation(relation) == "2·r3 - r4 = 0" => {}
            other => return Err(format!("χ2 certificate {other:?}")),
        }
    }

    let r3 = d.lambda_roots(3).ok_or("no L3 roots")?;
    let out = solve_type_two(&lam, &r3, d.symmetry(3).ok_or("no L3 symmetry")?, None).map_err(s)?;
    let w = out.witness.ok_or("χ3 has no witness")?;
    ensure(check_isometry(&lam, &w.t).passed(), "T is not an isometry")?;
    ensure(
        r3.len() == 8 && witness_conditions_hold(&lam, &w, &r3),
        "conditions on the 8 roots fail",
    )?;
    ensure(
        projective_square(&w.t).is_some() && !w.t.is_identity(),
        "T does not have projective order 2",
    )?;
    ensure(
        maps_fix_to_fix_i(&d.anti(3), &w.t).map_err(s)?,
        "T does not carry Fix(χ3) to Fix(iχ3)",
    )?;

    let names: Vec<&str> = (0..5)
        .map(|i| stab_structure(d, i, 1).map(|r| r.structure.name()))
        .collect::<Result<_, _>>()
        .map_err(s)?;
    let joined = names.join("/");
    ensure(
        joined == "equal/equal/equal/semidirect/equal",
        format!("structures {joined}"),
    )?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!(
        "χ2 none (2r3 = r4), χ3 witness, {joined} ({elapsed:.1?})"
    ))
}

fn criterion_7(d: &ReferenceData, l4_run: &VinbergRun) -> Outcome {
    let lam = d.lambda().map_err(s)?;
    let l4 = d.fixed_lattice(4);
    let roots: Vec<Vec<GaussInt>> = l4_run
        .roots
        .iter()
        .map(|r| l4.embed(&r.coords).ok_or("root not in Λ"))
        .collect::<Result<_, _>>()?;
    let hits = discriminant_walls(&lam, &roots);
    ensure(
        hits.len() == 1,
        format!("{} discriminant walls", hits.len()),
    )?;
    let w = &hits[0].w;
    let p = GaussInt::one_plus_i();
    let rebuilt: Vec<GaussInt> = w.iter().map(|z| &p * z).collect();
    ensure(rebuilt == roots[hits[0].root], "root is not (1+i)w")?;
    ensure(
        w.iter()
            .fold(GaussInt::new(0, 0), |g, z| g.gcd(z))
            .is_unit(),
        "w not primitive",
    )?;
    ensure(lam.q_norm(w) == BigInt::from(-2), "q(w) ≠ −2")?;
    Ok(format!("one wall, root r{} = (1+i)w", hits[0].root + 1))
}

fn criterion_8(d: &ReferenceData) -> Outcome {
    let start = Instant::now();
    let lz = d.lz().map_err(s)?;
    let group = enumerate_isometries(&lz).map_err(s)?;
    ensure(group.order() == 96, format!("{} isometries", group.order()))?;
    let k1 = AntiIsometry::new(d.kappa1.clone());
    let k3 = AntiIsometry::new(d.kappa3.clone());
    let antis = enumerate_anti_involutions(&lz, &group, &k1).map_err(s)?;
    ensure(
        antis.len() == 36,
        format!("{} anti-involutions", antis.len()),
    )?;
    let classes = conjugacy_classes(&group, &antis);
    ensure(classes.len() == 2, format!("{} classes", classes.len()))?;

    let v = |n: &str| d.cone_vector(n).cloned().map_err(s);
    let (u1, u2, v2, v3) = (v("u1")?, v("u2")?, v("v2")?, v("v3")?);
    let w1 = wedge_quotient(&lz, &group, &k1, Some([u1.clone(), u2.clone()])).map_err(s)?;
    let w3 = wedge_quotient(&lz, &group, &k3, Some([v2.clone(), v3.clone()])).map_err(s)?;
    let diag = |a, b| ZMat::from_i64(&[&[a, 0], &[0, b]]);
    ensure(
        w1.gram == diag(-4, -2) && w3.gram == diag(-2, -2),
        "Fix Grams",
    )?;
    let frac = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    ensure(
        w1.angle == frac(1, 2) && w3.angle == frac(1, 4),
        "wedge angles",
    )?;
    ensure(
        witnesses(&group, &v3, &u1).contains(&d.cone_a1),
        "A1 is not a witness",
    )?;
    ensure(
        witnesses(&group, &v2, &u2).contains(&d.cone_a2),
        "A2 is not a witness",
    )?;
    let cone = glue_cone(
        &group,
        vec![w1, w3],
        &[("v3", &v3, "u1", &u1), ("v2", &v2, "u2", &u2)],
    )
    .map_err(s)?;
    ensure(
        cone.total_angle == frac(3, 4),
        format!("total angle {}", cone.total_angle),
    )?;
    ensure(!cone.is_orbifold_angle(), "3/4 reported as 1/k")?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(120))?;
    Ok(format!(
        "96 / 36 / 2 classes, π/2 + π/4 = 3π/4, not π/k ({elapsed:.1?})"
    ))
}

fn gauss() -> impl Strategy<Value = GaussInt> {
    (-30i64..=30, -30i64..=30).prop_map(|(a, b)| GaussInt::new(a, b))
}

fn criterion_9(d: &ReferenceData) -> Outcome {
    // random samples
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    let lam = d.lambda().map_err(s)?;
    let sp = F2QuadraticSpace::from_lattice(&lam).map_err(s)?;
    runner
        .run(
            &(
                prop::collection::vec(gauss(), 6),
                prop::collection::vec(gauss(), 6),
                0usize..5,
            ),
            |(x, y, i): (Vec<GaussInt>, Vec<GaussInt>, usize)| {
                let g = lam.gram();
                let hxy = hermitian_form(g, &x, &y);
                prop_assert_eq!(hxy.clone(), hermitian_form(g, &y, &x).conj());
                let chi = d.anti(i);
                prop_assert_eq!(
                    hermitian_form(g, &chi.apply(&x), &chi.apply(&y)),
                    hxy.conj()
                );
                prop_assert_eq!(chi.apply(&chi.apply(&x)), x.clone());
                let half: BigInt = lam.q_norm(&x) / 2;
                prop_assert_eq!(u8::from(half.bit(0)), sp.q(reduce_vector(&x)));
                Ok(())
            },
        )
        .map_err(|e| format!("property: {e}"))?;

    // enumeration against the box
    let l0 = d.fixed_lattice(0);
    let v0 = match d.vinberg_options(0, 1).v0 {
        Some(v) => v,
        None => find_v0(&l0).map_err(s)?,
    };
    let allowed = allowed_norms(&l0).map_err(s)?;
    let bound = BigRational::from_integer(BigInt::from(2));
    let mut fast: Vec<Vec<i64>> = enumerate_roots(&l0, &allowed, &bound, &v0, 1)
        .map_err(s)?
        .iter()
        .map(|r| {
            r.coords
                .iter()
                .map(|x| x.to_i64().unwrap_or(i64::MAX))
                .collect()
        })
        .collect();
    let mut slow = boxed_roots(&l0, &allowed, 2, &v0, 3).map_err(s)?;
    fast.sort();
    slow.sort();
    ensure(
        !slow.is_empty() && fast == slow,
        format!("{} enumerated vs {} boxed", fast.len(), slow.len()),
    )?;

    // CLI determinism
    let bin = env!("CARGO_BIN_EXE_octica");
    let runs: [&[&str]; 4] = [
        &[
            "--json",
            "verify-all",
            "--no-timings",
            "--only",
            "fix,mod2,orthogonal,type2,cone",
        ],
        &["diagram", "--lattice", "L3", "--format", "dot"],
        &["s8-table"],
        &["cone-angle"],
    ];
    for args in runs {
        let a = Command::new(bin).args(args).output().map_err(s)?;
        let b = Command::new(bin).args(args).output().map_err(s)?;
        ensure(
            a.status.success(),
            format!("octica {} exited {:?}", args.join(" "), a.status.code()),
        )?;
        ensure(
            a.stdout == b.stdout,
            format!("octica {} differs between runs", args.join(" ")),
        )?;
    }
    Ok(format!(
        "1000 samples, {} roots match the box, {} CLI reruns identical",
        fast.len(),
        runs.len()
    ))
}

fn main() {
    let d = reference_data().data;
    let mut runs = Vec::new();
    let mut failed = 0;
    let mut report = |n: usize, outcome: Outcome| match outcome {
        Ok(msg) => println!("criterion {n}: PASS  {msg}"),
        Err(msg) => {
            failed += 1;
            println!("criterion {n}: FAIL  {msg}");
        }
    };
    report(1, criterion_1(&d));
    report(2, criterion_2(&d, &mut runs));
    if runs.len() == 5 {
        report(3, criterion_3(&d, &runs[2]));
    } else {
        report(3, Err("no L2 chamber (criterion 2 failed)".into()));
    }
    report(4, criterion_4(&d));
    report(5, criterion_5(&d));
    report(6, criterion_6(&d));
    if runs.len() == 5 {
        report(7, criterion_7(&d, &runs[4]));
    } else {
        report(7, Err("no L4 chamber (criterion 2 failed)".into()));
    }
    report(8, criterion_8(&d));
    report(9, criterion_9(&d));
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
