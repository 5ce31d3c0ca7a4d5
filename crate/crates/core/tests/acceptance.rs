//! Acceptance checks, one line per criterion.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use common::{q, random_poly};
use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vvjack::combinatorics::{compositions, graph_below, jack_count_series};
use vvjack::hermitian::{norm, recursive_norm};
use vvjack::operators::{cherednik, cherednik_alt, elementary, hamiltonian_poly};
use vvjack::symmetric_jack::{column_strict_labels, component, jack, jack_norm_direct, minimal_jack, minimal_jack_norm};
use vvjack::torus_wave::base_state::{euler_defect, max_abs_diff};
use vvjack::torus_wave::hyper22::{chamber_grid, cross_ratio, ode_agreement};
use vvjack::torus_wave::wave::{boundedness_probe, default_ladder, density, eigen_check};
use vvjack::torus_wave::JackField;
use vvjack::yang_baxter::edge_target;
use vvjack::{BaseState, Edge, JackEngine, KappaContext, Partition, Permutation, Poly, TorusPoint};

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn engine(parts: &[usize], k: BigRational) -> JackEngine<BigRational> {
    JackEngine::new(&KappaContext::new(&Partition::new(parts.to_vec()).unwrap(), k).unwrap())
}

fn c1() -> Check {
    for k in [q(1, 10), q(-1, 7)] {
        let e = engine(&[2, 1], k.clone());
        let one = q(1, 1);
        let two = q(2, 1);
        ensure(e.spectral_vector(&[0, 1, 1], 0) == vec![one.clone(), &two + &k, &two - &k], "ξ at T0")?;
        ensure(e.spectral_vector(&[0, 1, 1], 1) == vec![one.clone(), &two - &k, &two + &k], "ξ at T1")?;
        let (_, _, b) = edge_target(e.context(), &[0, 1, 1], 0, Edge::Step(1)).map_err(|e| e.to_string())?;
        ensure(-b.unwrap() == &k / (&one + &k), "step coefficient")?;
        let (_, t, b) = edge_target(e.context(), &[0, 1, 1], 0, Edge::Jump(2)).map_err(|e| e.to_string())?;
        ensure(t == 1 && b.unwrap() == q(1, 2), "jump coefficient")?;
    }
    Ok("κ ∈ {1/10, -1/7}".into())
}

fn small_shapes() -> Vec<Partition> {
    (2..=4).flat_map(Partition::all_of).collect()
}

fn c2_c3() -> (Check, Check) {
    let mut nodes = 0usize;
    let mut eigen: std::result::Result<(), String> = Ok(());
    let mut norms: std::result::Result<(), String> = Ok(());
    'outer: for shape in small_shapes() {
        for k in [q(1, 10), q(-1, 7), q(2, 17)] {
            let e = engine(shape.parts(), k);
            let ctx = e.context().clone();
            for d in 0..=5 {
                for a in compositions(ctx.n(), d) {
                    for t in 0..ctx.dim() {
                        nodes += 1;
                        let z = match e.nsjp(&a, t) {
                            Ok(z) => z,
                            Err(err) => {
                                eigen = Err(format!("{shape:?} {a:?} T{t}: {err}"));
                                break 'outer;
                            }
                        };
                        let xi = e.spectral_vector(&a, t);
                        for i in 1..=ctx.n() {
                            if cherednik(&z, i).unwrap() != z.scale(&xi[i - 1]) {
                                eigen = Err(format!("U_{i} on {shape:?} {a:?} T{t}"));
                                break 'outer;
                            }
                        }
                        if z.exponents().iter().any(|b| *b != a && !graph_below(b, &a)) {
                            eigen = Err(format!("triangularity at {shape:?} {a:?} T{t}"));
                            break 'outer;
                        }
                        if norms.is_ok() {
                            let closed = norm(&ctx, &a, t);
                            let rec = recursive_norm(&e, &a, t);
                            match (closed, rec) {
                                (Ok(c), Ok(r)) if c == r && c > BigRational::zero() => {}
                                _ => norms = Err(format!("norm at {shape:?} {a:?} T{t}")),
                            }
                        }
                    }
                }
            }
        }
    }
    let eigen = eigen.map(|_| format!("{nodes} nodes"));
    let norms = if eigen.is_ok() { norms.map(|_| format!("{nodes} nodes")) } else { Err("sweep incomplete".into()) };
    (eigen, norms)
}

fn c4() -> Check {
    for k in [q(1, 10), q(-1, 7)] {
        let e = engine(&[2, 2], k.clone());
        let ctx = e.context().clone();
        let x = |i: usize| {
            let mut a = vec![0; 4];
            a[i - 1] = 1;
            a
        };
        let var = |i: usize, t: usize| Poly::monomial(&ctx, &x(i), t);
        // p_{T0} = (x1 − x2)(x3 − x4), p_{T1} = x1x2 + x3x4 − (x1 + x2)(x3 + x4)/2
        let p0 = &(&var(1, 0) - &var(2, 0)).mul_var(3) - &(&var(1, 0) - &var(2, 0)).mul_var(4);
        let e1 = &var(1, 1) + &var(2, 1);
        let p1 = &(&var(1, 1).mul_var(2) + &var(3, 1).mul_var(4)) - &(&e1.mul_var(3) + &e1.mul_var(4)).scale(&q(1, 2));
        let expect = &p0.scale(&q(3, 4)) + &p1;
        let j = jack(&e, &[1, 1, 0, 0], 1).map_err(|e| e.to_string())?;
        ensure(j.poly == expect, "J differs from the worked example")?;
        ensure(ctx.basis().tableau(1).norm0::<BigRational>() == q(3, 4), "⟨T1,T1⟩0")?;
        for i in 1..=3 {
            ensure(j.poly.act_simple(i).unwrap() == j.poly, format!("s_{i}J ≠ J"))?;
        }
        let comp = component(&ctx, &[1, 1, 0, 0], 1).unwrap();
        let direct = jack_norm_direct(&ctx, &comp).unwrap();
        let minimal = minimal_jack_norm(&ctx).unwrap();
        ensure(j.norm == direct && direct == minimal, "three norms disagree")?;
        ensure(minimal_jack(&e).unwrap().poly == j.poly, "minimal construction")?;
    }
    Ok("κ ∈ {1/10, -1/7}".into())
}

fn c5() -> Check {
    let mut count = 0;
    for shape in small_shapes() {
        for k in [q(1, 10), q(-1, 7), q(2, 17)] {
            let e = engine(shape.parts(), k);
            let ctx = e.context().clone();
            for n in 0..=4 {
                for (lambda, sink) in column_strict_labels(&ctx, n, false) {
                    let j = jack(&e, &lambda, sink).map_err(|e| e.to_string())?;
                    ensure(hamiltonian_poly(&j.poly).unwrap() == j.poly.scale(&j.eigenvalue), format!("{shape:?} {lambda:?}"))?;
                    let s2: i64 = ctx.basis().tableau(sink).content_vector().iter().map(|c| c * c).sum();
                    ensure(s2 == shape.content_square_sum_closed(), format!("S2 for {shape:?}"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} labels"))
}

fn c6() -> Check {
    let mut out = Vec::new();
    for parts in [&[2, 1][..], &[2, 2], &[3, 1], &[3, 2]] {
        let e = engine(parts, q(1, 10));
        let series = jack_count_series(e.context().shape(), 8, false);
        let got: Vec<u128> = (0..=8).map(|n| column_strict_labels(e.context(), n, false).len() as u128).collect();
        ensure(got == series, format!("{parts:?}: {got:?} vs {series:?}"))?;
        out.push(format!("{parts:?}:{got:?}"));
    }
    Ok(out.join(" "))
}

fn c7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let shapes = [&[2, 1][..], &[2, 2], &[3, 1], &[2, 1, 1]];
    let kappas = [q(1, 10), q(-1, 7), q(2, 17)];
    let inputs = 60;
    for r in 0..inputs {
        let e = engine(shapes[r % 4], kappas[r % 3].clone());
        let ctx = e.context().clone();
        let k = ctx.kappa().clone();
        let n = ctx.n();
        let p = random_poly(&ctx, &mut rng, 3, 3);
        let u: Vec<Poly> = (1..=n).map(|i| cherednik(&p, i).unwrap()).collect();
        for i in 1..n {
            let sp = p.act_simple(i).unwrap();
            ensure(cherednik(&sp, i).unwrap().act_simple(i).unwrap() == &u[i] + &sp.scale(&k), "s_iU_is_i")?;
            ensure(cherednik(&sp, i).unwrap() == &u[i].act_simple(i).unwrap() + &p.scale(&k), "U_is_i")?;
            for j in 1..=n {
                if i != j && i + 1 != j {
                    ensure(cherednik(&sp, j).unwrap() == cherednik(&p, j).unwrap().act_simple(i).unwrap(), "s_jU_i")?;
                }
            }
        }
        for i in 1..=n {
            ensure(u[i - 1] == cherednik_alt(&p, i).unwrap(), "dual formula")?;
            for j in i + 1..=n {
                ensure(cherednik(&u[i - 1], j).unwrap() == cherednik(&u[j - 1], i).unwrap(), "U_iU_j")?;
            }
        }
        if r % 6 == 0 {
            for kk in 1..=n {
                let ek = elementary(&p, kk).unwrap();
                for i in 1..n {
                    ensure(elementary(&p.act_simple(i).unwrap(), kk).unwrap() == ek.act_simple(i).unwrap(), "e_k(U)")?;
                }
            }
        }
    }
    Ok(format!("{inputs} random inputs"))
}

fn chamber_points(n: usize, count: usize) -> Vec<TorusPoint> {
    (0..count)
        .map(|k| {
            let mut t = Vec::new();
            let mut acc = 0.0;
            let gaps: Vec<f64> = (0..n).map(|j| 1.0 + 0.6 * ((3 * k + 5 * j + 1) as f64).sin()).collect();
            let total: f64 = gaps.iter().sum();
            for g in &gaps {
                t.push(acc);
                acc += g / total * 2.0 * PI;
            }
            TorusPoint::new(t)
        })
        .collect()
}

fn c8() -> Check {
    let mut report = Vec::new();
    for parts in [&[2, 1][..], &[2, 2]] {
        for k in [0.1, -0.1] {
            let shape = Partition::new(parts.to_vec()).unwrap();
            let s = BaseState::new(&shape, k).map_err(|e| e.to_string())?;
            let n = s.n();
            let pts = chamber_points(n, 20);
            let tag = format!("{parts:?} κ={k}");
            for (idx, x) in pts.iter().enumerate() {
                ensure(euler_defect(&s, x).unwrap() < 1e-12, format!("{tag}: Σx_iA_i"))?;
                let l = s.integrate_l(x).unwrap().value;
                let lu = s.extend_l(&x.rotate(0.37 + idx as f64)).unwrap().value;
                ensure(max_abs_diff(&l, &lu) < 1e-9, format!("{tag}: homogeneity"))?;
                if idx < 5 {
                    let via = s.integrate_via(x, &pts[(idx + 7) % pts.len()]).unwrap();
                    ensure(max_abs_diff(&l, &via) < 10.0 * s.tol(), format!("{tag}: path independence"))?;
                    let w0 = Permutation::long_cycle(n);
                    for m in 1..n as i64 {
                        let lm = s.extend_l(&x.act(&w0.pow(m))).unwrap().value;
                        let expect = s.cycle_power(-m) * &l * s.cycle_power(m);
                        ensure(max_abs_diff(&lm, &expect) < 1e-8, format!("{tag}: cyclic conjugation"))?;
                    }
                    let perms = Permutation::all(n);
                    for w1 in &perms {
                        for w2 in &perms {
                            let a = s.twist_m(&(w1 * w2), x);
                            let b = s.twist_m(w2, &x.act(w1)) * s.twist_m(w1, x);
                            ensure(max_abs_diff(&a, &b) < 1e-12, format!("{tag}: cocycle"))?;
                        }
                    }
                }
            }
            let det = s.det_report(&pts).unwrap();
            println!(
                "    det report {tag}: tr τ(1,2) = {:.6} (err {:.2e}), γn/(2(N-1)) = {:.6} (err {:.2e}), matches: {}",
                det.lambda_trace,
                det.max_rel_err_trace,
                det.lambda_alt,
                det.max_rel_err_alt,
                det.matching(1e-8)
            );
            ensure(det.max_rel_err_trace < 1e-8, format!("{tag}: det identity"))?;

            let e = engine(parts, q((k * 10.0).round() as i64, 10));
            let mut fields = vec![JackField::new(&minimal_jack(&e).unwrap())];
            let lam: Vec<i64> = (0..n).map(|i| if i == 0 { 2 } else if i + 1 == n { 0 } else { 1 }).collect();
            let sink = column_strict_labels(e.context(), lam.iter().sum(), false).into_iter().find(|(l, _)| *l == lam).unwrap().1;
            fields.push(JackField::new(&jack(&e, &lam, sink).unwrap()));
            let off: Vec<TorusPoint> = pts.iter().enumerate().map(|(i, x)| x.act(&Permutation::all(n)[i % 6])).collect();
            for j in &fields {
                let r = eigen_check(&s, &pts, j).unwrap();
                ensure(r.max_rel_residual < 1e-6, format!("{tag}: H(LJ) residual {:.2e}", r.max_rel_residual))?;
                let d = density(&s, &pts, j).unwrap();
                let dw = density(&s, &off, j).unwrap();
                for (a, b) in d.iter().zip(&dw) {
                    ensure(*a >= 0.0 && (a - b).abs() < 1e-8 * a.max(1.0), format!("{tag}: density symmetry"))?;
                }
            }
        }
    }
    // the two candidate exponents only separate on shapes with γ ≠ 0
    let s = BaseState::new(&Partition::new(vec![3, 1]).unwrap(), 0.1).unwrap();
    let det = s.det_report(&chamber_points(4, 5)).unwrap();
    println!(
        "    det report (3, 1) κ=0.1: tr τ(1,2) = {:.6} (err {:.2e}), γn/(2(N-1)) = {:.6} (err {:.2e}), matches: {}",
        det.lambda_trace,
        det.max_rel_err_trace,
        det.lambda_alt,
        det.max_rel_err_alt,
        det.matching(1e-8)
    );
    report.push(format!("(3,1) exponent match: {}", det.matching(1e-8)));
    Ok(report.join("; "))
}

fn c9() -> Check {
    let z0 = cross_ratio(&TorusPoint::base(4)).map_err(|e| e.to_string())?;
    ensure((z0 - 0.5).abs() < 1e-15, "ζ(x0)")?;
    for x in chamber_points(4, 50) {
        let z = cross_ratio(&x).map_err(|e| e.to_string())?;
        ensure(z > 0.0 && z < 1.0, "ζ outside (0,1)")?;
    }
    let mut worst = 0.0f64;
    for k in [0.1, -0.1] {
        let s = BaseState::new(&Partition::new(vec![2, 2]).unwrap(), k).unwrap();
        worst = worst.max(ode_agreement(&s, &chamber_grid(20)).map_err(|e| e.to_string())?);
    }
    ensure(worst <= 1e-7, format!("max error {worst:.2e}"))?;
    Ok(format!("max entrywise error {worst:.2e}"))
}

fn c10() -> Check {
    let shape = Partition::new(vec![2, 2]).unwrap();
    let s = BaseState::new(&shape, 0.2).unwrap();
    let e = engine(&[2, 2], q(1, 5));
    let j = JackField::new(&minimal_jack(&e).unwrap());
    let p = boundedness_probe(&s, &j, &[0.0, PI / 2.0], 1.25 * PI, &default_ladder(), 0.5).map_err(|e| e.to_string())?;
    let msg = format!("density slope {:.4}, raw ‖L‖² slope {:.4} (target {:.2})", p.density_slope, p.raw_slope, -0.4);
    ensure(p.density_slope >= -0.01, msg.clone())?;
    ensure((p.raw_slope + 0.4).abs() <= 0.2 * 0.4, msg.clone())?;
    Ok(msg)
}

fn main() {
    let mut failed = 0;
    let mut line = |id: u32, what: &str, limit: Option<Duration>, f: &mut dyn FnMut() -> Check| {
        let start = Instant::now();
        let res = f();
        let el = start.elapsed();
        let over = limit.is_some_and(|l| el > l);
        let ok = res.is_ok() && !over;
        if !ok {
            failed += 1;
        }
        let detail = match (&res, over) {
            (Ok(m), false) => m.clone(),
            (Ok(m), true) => format!("{m}; over time limit"),
            (Err(m), _) => m.clone(),
        };
        println!("criterion {id:>2} {}: {what} [{:.2?}] {detail}", if ok { "PASS" } else { "FAIL" }, el);
    };
    line(1, "(2,1) worked example", Some(Duration::from_secs(1)), &mut c1);
    let mut r3 = None;
    line(2, "eigen-invariant and triangularity", Some(Duration::from_secs(120)), &mut || {
        let (a, b) = c2_c3();
        r3 = Some(b);
        a
    });
    line(3, "closed-form norm = recursive norm, positivity (same sweep)", None, &mut || r3.take().unwrap());
    line(4, "(2,2) symmetric Jack example", None, &mut c4);
    line(5, "Hamiltonian eigenvalue of J", None, &mut c5);
    line(6, "counting series", None, &mut c6);
    line(7, "operator relations", None, &mut c7);
    line(8, "numeric base-state suite", Some(Duration::from_secs(300)), &mut c8);
    line(9, "(2,2) hypergeometric closed form", None, &mut c9);
    line(10, "boundedness probe", None, &mut c10);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
