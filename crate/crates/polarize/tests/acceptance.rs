//! Acceptance suite. One test per criterion; each prints a single
//! `[criterion N] ...: PASS` line when it succeeds (run with
//! `cargo test --test acceptance -- --nocapture` to see them).
//!
//! Everything is exact: no tolerances anywhere, only the two wall-clock
//! budgets stated alongside criteria 1 and 5.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polarize::calculus::{
    cube_root_units, diagonal_preperiodic, standard_context, CalculusContext, IdentityVerdict,
};
use polarize::jacobian::{curve_validate, CurveParams};
use polarize::parse::{
    parse_identity, parse_identity_file, parse_ring_element, IdentityTerm, ParsedIdentity, Span,
};
use polarize::rings::{ratio_is_root_of_unity, ring_make, RingElement, RingKind};

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn random_element(rng: &mut ChaCha8Rng, kind: RingKind, bound: i64) -> RingElement {
    let spec = ring_make(kind);
    let coeffs: Vec<i64> = (0..spec.degree())
        .map(|_| rng.gen_range(-bound..=bound))
        .collect();
    RingElement::from_i64s(spec, &coeffs).unwrap()
}

fn verify_source(ctx: &CalculusContext, source: &str) -> IdentityVerdict {
    let parsed = parse_identity(source, ctx.ring()).unwrap();
    let (lhs, rhs) = parsed.sides();
    ctx.verify(&lhs, &rhs).unwrap()
}

/// Criterion 1: the pullback identities reproduce with saturated
/// membership at minimum, all within one second of wall time.
#[test]
fn criterion_1_symbolic_reproduction() {
    let started = Instant::now();

    let gauss = standard_context(RingKind::Gaussian);
    for src in [
        "[1+i]*D + [1-i]*D ~ 4 D",
        "[1+i]*D ~ 2 D",
        "[2+i]*D ~ 5 D",
        "[2-i]*D ~ 5 D",
    ] {
        assert!(
            verify_source(&gauss, src).holds_saturated(),
            "failed: {src}"
        );
    }

    let sixth = CalculusContext::build(ring_make(RingKind::SixthRoot), cube_root_units()).unwrap();
    for src in [
        "[1-j]*D ~ 3 D",
        "[1-j^2]*D ~ 3 D",
        "[2-j]*D ~ 7 D",
        "[2-j^2]*D ~ 7 D",
    ] {
        assert!(
            verify_source(&sixth, src).holds_saturated(),
            "failed: {src}"
        );
    }

    let fifth = standard_context(RingKind::FifthRoot);
    for n in 0..=5u64 {
        for m in 0..=4u64 {
            let src = format!("[{n}+z^{m}]*D + [{n}-z^{m}]*D ~ {} D", 2 * n * n + 2);
            assert!(
                verify_source(&fifth, &src).holds_saturated(),
                "failed: {src}"
            );
        }
    }
    assert!(verify_source(&fifth, "[1+z]*D + [1+z^2]*D ~ 3 D").holds_saturated());
    assert!(verify_source(&fifth, "[(1+z)*(1+z^2)]*D ~ D").holds_saturated());

    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_secs(1),
        "symbolic reproduction took {elapsed:?}, budget is 1 s"
    );
    println!("[criterion 1] symbolic reproduction of all pullback identities in {elapsed:?}: PASS");
}

/// Criterion 2: the scalar-hypothesis refutation and its two controls.
#[test]
fn criterion_2_refutation() {
    let fifth = standard_context(RingKind::FifthRoot);
    let spec = ring_make(RingKind::FifthRoot);
    let alpha = parse_ring_element("1+z", spec).unwrap();
    let beta = parse_ring_element("1+z^2", spec).unwrap();
    let cert = fifth.refute_scalar_hypothesis(&alpha, &beta).unwrap();
    assert_eq!(cert.sum_scalar, big(3));
    assert_eq!(cert.product_scalar, big(1));
    assert_eq!(cert.equation(), "a*(3 - a) = 1");
    assert!(cert.solutions.is_empty(), "expected an empty solution set");
    assert!(cert.is_refuted());

    let gauss = standard_context(RingKind::Gaussian);
    let gspec = ring_make(RingKind::Gaussian);
    let a = parse_ring_element("1+i", gspec).unwrap();
    let b = parse_ring_element("1-i", gspec).unwrap();
    let control = gauss.refute_scalar_hypothesis(&a, &b).unwrap();
    assert_eq!(control.sum_scalar, big(4));
    assert_eq!(control.product_scalar, big(4));
    assert_eq!(control.solutions, vec![big(2)]);

    println!(
        "[criterion 2] refutation certificate a*(3 - a) = 1 empty, Gaussian control a = 2: PASS"
    );
}

/// Criterion 3: the diagonal-preperiodicity decisions.
#[test]
fn criterion_3_preperiodicity_decisions() {
    let g = ring_make(RingKind::Gaussian);
    let two_plus_i = parse_ring_element("2+i", g).unwrap();
    let two_minus_i = parse_ring_element("2-i", g).unwrap();
    assert!(!diagonal_preperiodic(&two_plus_i, &two_minus_i).unwrap());

    let s = ring_make(RingKind::SixthRoot);
    let a = parse_ring_element("2-j", s).unwrap();
    let b = parse_ring_element("2-j^2", s).unwrap();
    assert!(!diagonal_preperiodic(&a, &b).unwrap());

    assert!(diagonal_preperiodic(&RingElement::gaussian_i(), &RingElement::one(g)).unwrap());

    println!(
        "[criterion 3] diagonal preperiodicity: (2+i, 2-i) no, (2-j, 2-j^2) no, (i, 1) yes: PASS"
    );
}

/// Criterion 4: the recurrence route and the quadratic expansion agree
/// after reduction, for n in [0, 5] and 50 random elements per ring.
#[test]
fn criterion_4_recurrence_equals_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for kind in RingKind::ALL {
        let ctx = standard_context(kind);
        let mut alphas: Vec<RingElement> = (0..ctx.ring().degree())
            .map(|k| {
                let mut c = vec![0i64; ctx.ring().degree()];
                c[k] = 1;
                RingElement::from_i64s(ctx.ring(), &c).unwrap()
            })
            .collect();
        for _ in 0..50 {
            alphas.push(random_element(&mut rng, kind, 9));
        }
        for alpha in &alphas {
            for n in 0..=5u64 {
                let recurrence = ctx.n_plus_alpha(n, alpha).unwrap();
                let n_elem = RingElement::integer(ctx.ring(), n as i64);
                let direct = ctx
                    .quadratic_normal_form(&n_elem.add(alpha).unwrap())
                    .unwrap();
                assert_eq!(
                    ctx.reduce(&recurrence).unwrap(),
                    ctx.reduce(&direct).unwrap(),
                    "n = {n}, alpha = {alpha} in {kind}"
                );
            }
        }
    }
    println!("[criterion 4] recurrence route matches quadratic expansion (n in 0..=5, 50+ random elements, 3 rings): PASS");
}

/// Criterion 5: point-level corroboration on both stock curves, under a
/// 60-second budget each.
#[test]
fn criterion_5_jacobian_corroboration() {
    // y² = x⁵ - x over F₁₃
    let started = Instant::now();
    let ctx = curve_validate(CurveParams::gaussian_model(13).unwrap()).unwrap();
    let points = ctx.enumerate_points().unwrap();
    let order = ctx.jacobian_order_via_counts().unwrap();
    assert_eq!(points.len() as u64, order, "dual order methods disagree");

    let gspec = ring_make(RingKind::Gaussian);
    let two_plus_i = parse_ring_element("2+i", gspec).unwrap();
    let two_minus_i = parse_ring_element("2-i", gspec).unwrap();
    for p in &points {
        let twice = ctx.automorphism(&ctx.automorphism(p).unwrap()).unwrap();
        assert_eq!(twice, ctx.negate(p), "[i]² != [-1] at {}", p.render());
        let composed = ctx
            .endomorphism_apply(
                &two_plus_i,
                &ctx.endomorphism_apply(&two_minus_i, p).unwrap(),
            )
            .unwrap();
        assert_eq!(
            composed,
            ctx.scalar_mul(5, p).unwrap(),
            "[2+i][2-i] != [5] at {}",
            p.render()
        );
    }

    let k_two_plus_i = ctx.kernel_count(&two_plus_i).unwrap();
    assert_eq!(25 % k_two_plus_i, 0, "kernel of [2+i] must divide 25");
    // exhibited prime for the full rational kernel of [1+i]: p = 13,
    // which is ≡ 1 (mod 4) and ≤ 50
    let one_plus_i = parse_ring_element("1+i", gspec).unwrap();
    assert_eq!(
        ctx.kernel_count(&one_plus_i).unwrap(),
        4,
        "rational kernel of [1+i] at p = 13"
    );
    let elapsed_13 = started.elapsed();
    assert!(elapsed_13 < Duration::from_secs(60));

    // y² = x⁵ - 1 over F₁₁
    let started = Instant::now();
    let ctx = curve_validate(CurveParams::fifth_root_model(11).unwrap()).unwrap();
    let points = ctx.enumerate_points().unwrap();
    let order = ctx.jacobian_order_via_counts().unwrap();
    assert_eq!(points.len() as u64, order, "dual order methods disagree");
    for p in &points {
        let mut moved = p.clone();
        for _ in 0..5 {
            moved = ctx.automorphism(&moved).unwrap();
        }
        assert_eq!(moved, *p, "[z]⁵ != [1] at {}", p.render());
    }
    let elapsed_11 = started.elapsed();
    assert!(elapsed_11 < Duration::from_secs(60));

    println!(
        "[criterion 5] jacobian corroboration: p=13 order {} in {:?}, p=11 order {} in {:?}, kernels 4 and {} | 25: PASS",
        144, elapsed_13, 176, elapsed_11, k_two_plus_i
    );
}

/// Criterion 6: the property suites from the module invariants.
#[test]
fn criterion_6_property_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);

    // ring axioms and norm laws, 100+ samples per ring
    for kind in RingKind::ALL {
        for _ in 0..100 {
            let a = random_element(&mut rng, kind, 30);
            let b = random_element(&mut rng, kind, 30);
            let c = random_element(&mut rng, kind, 30);
            assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
            assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            assert_eq!(a.mul(&b).unwrap().norm(), a.norm() * b.norm());
            assert_eq!(a.norm().is_zero(), a.is_zero());
            if !a.is_zero() {
                assert!(ratio_is_root_of_unity(&a, &a).unwrap());
            }
            let m = rng.gen_range(0u64..5);
            let n = rng.gen_range(0u64..5);
            assert_eq!(a.power(m + n), a.power(m).mul(&a.power(n)).unwrap());
        }
    }

    // exhaustive root-of-unity count over coordinates in [-1, 1]
    for kind in RingKind::ALL {
        let spec = ring_make(kind);
        let d = spec.degree();
        let mut count = 0u32;
        let mut stack = vec![(Vec::<i64>::new(),)];
        while let Some((prefix,)) = stack.pop() {
            if prefix.len() == d {
                let e = RingElement::from_i64s(spec, &prefix).unwrap();
                if !e.is_zero() && e.is_root_of_unity().unwrap() {
                    count += 1;
                }
                continue;
            }
            for c in -1..=1i64 {
                let mut next = prefix.clone();
                next.push(c);
                stack.push((next,));
            }
        }
        assert_eq!(count, spec.root_of_unity_count());
    }

    // quadratic-form law, parallelogram law, unit invariance
    for kind in RingKind::ALL {
        let ctx = standard_context(kind);
        for _ in 0..50 {
            let alpha = random_element(&mut rng, kind, 9);
            let beta = random_element(&mut rng, kind, 9);
            // q(nα) = n² q(α) after reduction, n in [-5, 5]
            for n in -5..=5i64 {
                let scaled = alpha.mul(&RingElement::integer(ctx.ring(), n)).unwrap();
                let lhs = ctx
                    .reduce(&ctx.quadratic_normal_form(&scaled).unwrap())
                    .unwrap();
                let rhs = ctx
                    .reduce(&ctx.quadratic_normal_form(&alpha).unwrap())
                    .unwrap()
                    .scale(&big(n * n));
                assert_eq!(lhs, rhs, "n = {n}, alpha = {alpha}");
            }
            // exact parallelogram law before reduction
            let sum = ctx
                .quadratic_normal_form(&alpha.add(&beta).unwrap())
                .unwrap();
            let diff = ctx
                .quadratic_normal_form(&alpha.sub(&beta).unwrap())
                .unwrap();
            let lhs = sum.add(&diff);
            let rhs = ctx
                .quadratic_normal_form(&alpha)
                .unwrap()
                .scale(&big(2))
                .add(&ctx.quadratic_normal_form(&beta).unwrap().scale(&big(2)));
            assert_eq!(lhs, rhs);
            // unit invariance completeness
            for u in ctx.units() {
                let moved = ctx.quadratic_normal_form(&u.mul(&alpha).unwrap()).unwrap();
                let base = ctx.quadratic_normal_form(&alpha).unwrap();
                assert_eq!(ctx.reduce(&moved).unwrap(), ctx.reduce(&base).unwrap());
            }
        }
    }

    // polarization scalar vs norm degree consistency: c² = norm^(4/d)
    for kind in RingKind::ALL {
        let ctx = standard_context(kind);
        let d = ctx.ring().degree() as u32;
        for _ in 0..50 {
            let alpha = random_element(&mut rng, kind, 6);
            if alpha.is_zero() {
                continue;
            }
            if let Some(c) = ctx.polarization_scalar(&alpha).unwrap() {
                let norm_power = alpha.norm().pow(4 / d);
                assert_eq!(&c * &c, norm_power, "alpha = {alpha} in {kind}");
            }
        }
    }

    // Jacobian group axioms at p = 13: identity and inverses on every
    // point, commutativity exhaustively, associativity on 1000 triples
    let ctx = curve_validate(CurveParams::gaussian_model(13).unwrap()).unwrap();
    let points = ctx.enumerate_points().unwrap();
    for p in &points {
        assert_eq!(&ctx.cantor_add(p, &ctx.identity()).unwrap(), p);
        assert!(ctx.cantor_add(p, &ctx.negate(p)).unwrap().is_identity());
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            assert_eq!(
                ctx.cantor_add(&points[i], &points[j]).unwrap(),
                ctx.cantor_add(&points[j], &points[i]).unwrap()
            );
        }
    }
    for _ in 0..1000 {
        let a = &points[rng.gen_range(0..points.len())];
        let b = &points[rng.gen_range(0..points.len())];
        let c = &points[rng.gen_range(0..points.len())];
        assert_eq!(
            ctx.cantor_add(&ctx.cantor_add(a, b).unwrap(), c).unwrap(),
            ctx.cantor_add(a, &ctx.cantor_add(b, c).unwrap()).unwrap()
        );
    }

    // automorphism is a homomorphism on 500 pairs
    for _ in 0..500 {
        let a = &points[rng.gen_range(0..points.len())];
        let b = &points[rng.gen_range(0..points.len())];
        assert_eq!(
            ctx.automorphism(&ctx.cantor_add(a, b).unwrap()).unwrap(),
            ctx.cantor_add(&ctx.automorphism(a).unwrap(), &ctx.automorphism(b).unwrap())
                .unwrap()
        );
    }

    // ring-action laws on random samples
    let gspec = ring_make(RingKind::Gaussian);
    let action_elems: Vec<RingElement> = [
        &[1, 1][..],
        &[2, -1][..],
        &[0, 1][..],
        &[3, 2][..],
        &[-1, 2][..],
    ]
    .iter()
    .map(|c| RingElement::from_i64s(gspec, c).unwrap())
    .collect();
    for _ in 0..30 {
        let p = &points[rng.gen_range(0..points.len())];
        for a in &action_elems {
            for b in &action_elems {
                let prod = a.mul(b).unwrap();
                let sum = a.add(b).unwrap();
                assert_eq!(
                    ctx.endomorphism_apply(a, &ctx.endomorphism_apply(b, p).unwrap())
                        .unwrap(),
                    ctx.endomorphism_apply(&prod, p).unwrap()
                );
                assert_eq!(
                    ctx.cantor_add(
                        &ctx.endomorphism_apply(a, p).unwrap(),
                        &ctx.endomorphism_apply(b, p).unwrap()
                    )
                    .unwrap(),
                    ctx.endomorphism_apply(&sum, p).unwrap()
                );
            }
        }
    }

    // every enumerated point's order divides the group order, both curves
    let order = ctx.jacobian_order_via_counts().unwrap();
    for p in &points {
        assert!(ctx.scalar_mul(order as i128, p).unwrap().is_identity());
    }
    let zctx = curve_validate(CurveParams::fifth_root_model(11).unwrap()).unwrap();
    let zpoints = zctx.enumerate_points().unwrap();
    let zorder = zctx.jacobian_order_via_counts().unwrap();
    for p in &zpoints {
        assert!(zctx.scalar_mul(zorder as i128, p).unwrap().is_identity());
    }

    // kernel counts divide norm^(4/d) on both curves
    for (jctx, kind, texts) in [
        (&ctx, RingKind::Gaussian, vec!["1+i", "2+i", "3"]),
        (&zctx, RingKind::FifthRoot, vec!["1-z", "2", "1+z"]),
    ] {
        let spec = ring_make(kind);
        let d = spec.degree() as u32;
        for text in texts {
            let alpha = parse_ring_element(text, spec).unwrap();
            let count = jctx.kernel_count(&alpha).unwrap();
            let degree = alpha.norm().pow(4 / d);
            assert!(
                (&degree % BigInt::from(count)).is_zero(),
                "kernel of [{text}] has {count} rational points, degree {degree}"
            );
        }
    }

    // parser round-trip on 200 generated identities
    for _ in 0..200 {
        let kind = RingKind::ALL[rng.gen_range(0..3)];
        let spec = ring_make(kind);
        let side = |rng: &mut ChaCha8Rng| -> Vec<IdentityTerm> {
            (0..rng.gen_range(1..4))
                .map(|_| IdentityTerm {
                    coeff: big(rng.gen_range(-9i64..=9)),
                    element: {
                        let coeffs: Vec<i64> = (0..spec.degree())
                            .map(|_| rng.gen_range(-9i64..=9))
                            .collect();
                        RingElement::from_i64s(spec, &coeffs).unwrap()
                    },
                    span: Span { line: 1, column: 1 },
                })
                .collect()
        };
        let identity = ParsedIdentity {
            ring: spec,
            lhs: side(&mut rng),
            rhs: side(&mut rng),
        };
        let printed = identity.to_string();
        let reparsed = parse_identity(&printed, spec)
            .unwrap_or_else(|e| panic!("round trip failed on '{printed}': {e}"));
        assert_eq!(identity, reparsed, "printed form: {printed}");
    }

    // parser fuzz: 10^4 random byte strings, every rejection carries a
    // position, nothing panics or hangs
    for _ in 0..10_000 {
        let len = rng.gen_range(0..48);
        let bytes: Vec<u8> = (0..len).map(|_| rng.gen_range(0u8..=255)).collect();
        let text = String::from_utf8_lossy(&bytes).to_string();
        let kind = RingKind::ALL[rng.gen_range(0..3)];
        let spec = ring_make(kind);
        if let Err(e) = parse_identity(&text, spec) {
            assert!(e.line >= 1 && e.column >= 1);
        }
        let _ = parse_ring_element(&text, spec);
        let _ = parse_identity_file(&text, Some(kind));
    }

    // monomials g^k agree with direct construction for k <= 12
    for kind in RingKind::ALL {
        let spec = ring_make(kind);
        let g = RingElement::generator(spec);
        for k in 0..=12u64 {
            let text = format!("{}^{k}", kind.generator_symbol());
            assert_eq!(parse_ring_element(&text, spec).unwrap(), g.power(k));
        }
    }

    println!("[criterion 6] ring/calculus/jacobian/parser property suites: PASS");
}

/// Criterion 7: the command-line contract.
#[test]
fn criterion_7_cli_contract() {
    let exe = env!("CARGO_BIN_EXE_polarize");

    for scenario in ["deg5", "deg6", "deg6-alpha", "zeta5"] {
        let out = Command::new(exe)
            .args(["verify", "--scenario", scenario])
            .output()
            .unwrap();
        assert_eq!(
            out.status.code(),
            Some(0),
            "scenario {scenario} failed:\n{}{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        );
    }

    // JSON output carries the schema version and expected shape
    let out = Command::new(exe)
        .args(["verify", "--scenario", "deg5", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["schema_version"], 1);
    assert_eq!(json["scenario"], "deg5");
    assert!(json["verdicts"].as_array().is_some());
    assert!(json["jacobian"]["orders"]["agree"].as_bool().unwrap());

    let dir = std::env::temp_dir();
    let stamp = std::process::id();

    // a deliberately false identity exits 1
    let false_file = dir.join(format!("polarize-acceptance-false-{stamp}.txt"));
    std::fs::write(&false_file, "ring: fifthroot\n[1+z]*D ~ 2 D\n").unwrap();
    let out = Command::new(exe)
        .args(["verify", "--file", false_file.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "false identity must exit 1");

    // malformed input exits 2
    let bad_file = dir.join(format!("polarize-acceptance-bad-{stamp}.txt"));
    std::fs::write(&bad_file, "ring: gaussian\n[1+\n").unwrap();
    let out = Command::new(exe)
        .args(["verify", "--file", bad_file.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "malformed file must exit 2");

    // unknown scenario and bad usage exit 2
    let out = Command::new(exe)
        .args(["verify", "--scenario", "deg7"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(exe).args(["verify"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(exe)
        .args(["jacobian", "--curve", "x^5-x", "--prime", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "non-prime must exit 2");

    // jacobian runs on both stock curves
    let out = Command::new(exe)
        .args(["jacobian", "--curve", "x^5-x", "--prime", "13"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(exe)
        .args(["jacobian", "--curve", "x^5-1", "--prime", "11"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    std::fs::remove_file(&false_file).ok();
    std::fs::remove_file(&bad_file).ok();

    println!("[criterion 7] CLI contract (exit codes 0/1/2, JSON schema): PASS");
}
