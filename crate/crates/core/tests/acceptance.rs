use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use tnm_core::analysis::{
    are_isomorphic, is_cover, is_critical, parameter_solutions, uniqueness_reconstruction, VertexBijection,
};
use tnm_core::dualgraph::dual_graph;
use tnm_core::homology::{beta1_dual_formula, beta1_z2, betti_z2, chain_complex, is_orientable};
use tnm_core::walkup::{
    bar_construction, handle_addition, is_stacked_ball, is_stacked_sphere, kuehnel_solid, kuehnel_torus,
    random_stacked_ball, HandleMap,
};
use tnm_core::{Face, SimplicialComplex, Vertex};

type Check = Result<(), String>;

/// Name, time limit in seconds, body.
type Criterion = (&'static str, u64, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn kuehnel_suite() -> Check {
    for d in 3..=8 {
        let t = kuehnel_torus(d).map_err(|e| e.to_string())?;
        ensure(t.num_vertices() == 2 * d + 3, || format!("d={d}: f0 = {}", t.num_vertices()))?;
        ensure(t.is_neighborly(2), || format!("d={d}: not 2-neighborly"))?;
        for &v in t.vertices() {
            let link = t.vertex_link(v).unwrap();
            ensure(is_stacked_sphere(&link).unwrap_or(false), || format!("d={d}: link of {v} not stacked"))?;
        }
        ensure(beta1_z2(&t) == 1, || format!("d={d}: beta1 = {}", beta1_z2(&t)))?;
        ensure(t.f_vector().euler == 0, || format!("d={d}: euler = {}", t.f_vector().euler))?;
        let orientable = is_orientable(&t).map_err(|e| e.to_string())?;
        ensure(orientable == (d % 2 == 0), || format!("d={d}: orientable = {orientable}"))?;
    }
    Ok(())
}

fn bar_round_trip() -> Check {
    for d in 4..=8 {
        let t = kuehnel_torus(d).unwrap();
        let bar = bar_construction(&t);
        let back = bar.boundary_complex().map_err(|e| e.to_string())?;
        ensure(back == t, || format!("d={d}: boundary of the closure differs from the torus"))?;
        let solid = kuehnel_solid(d).unwrap();
        let iso = are_isomorphic(&bar, &solid).ok_or_else(|| format!("d={d}: closure not isomorphic to solid"))?;
        ensure(iso.maps_onto(&bar, &solid), || format!("d={d}: bad witness"))?;
    }
    Ok(())
}

/// Facets of `m` containing `v`, counted straight from the facet list.
fn facets_with(m: &SimplicialComplex, v: Vertex) -> Vec<&Face> {
    m.facets().iter().filter(|f| f.contains(v)).collect()
}

fn counting() -> Check {
    for d in 4..=8 {
        let solid = kuehnel_solid(d).unwrap();
        let dual = dual_graph(&solid).map_err(|e| e.to_string())?;
        let (n, dd) = (2 * d + 3, d + 1);
        let nodes = n * (n - dd) / (dd + 1);
        let edges = n * (n - dd - 1) / dd;
        ensure(nodes == n && edges == n, || format!("d={d}: formula values {nodes}, {edges}"))?;
        // Ridge-sharing pairs, counted by brute force over facet pairs.
        let facets = solid.facets();
        let mut brute_edges = 0;
        for i in 0..facets.len() {
            for j in i + 1..facets.len() {
                if facets[i].intersection(&facets[j]).len() == dd {
                    brute_edges += 1;
                }
            }
        }
        ensure(dual.nu() == nodes && brute_edges == edges && dual.epsilon() == edges, || {
            format!("d={d}: nu={}, eps={}, brute={brute_edges}", dual.nu(), dual.epsilon())
        })?;
        ensure(n == 2 * dd + 1 && dual.is_cycle(), || format!("d={d}: cycle equality fails"))?;
        for &v in solid.vertices() {
            let around = facets_with(&solid, v);
            ensure(around.len() == n - dd, || format!("d={d}: vertex {v} in {} facets", around.len()))?;
            // A path: connected, |E| = |V| - 1, no node of degree three.
            let mut degree = vec![0usize; around.len()];
            let mut links = 0;
            for i in 0..around.len() {
                for j in i + 1..around.len() {
                    if around[i].intersection(around[j]).len() == dd {
                        degree[i] += 1;
                        degree[j] += 1;
                        links += 1;
                    }
                }
            }
            let ends = degree.iter().filter(|&&g| g == 1).count();
            ensure(links == around.len() - 1 && ends == 2 && degree.iter().all(|&g| g <= 2), || {
                format!("d={d}: facets around {v} do not form a path")
            })?;
        }
    }
    Ok(())
}

fn beta1_cross() -> Check {
    for d in 4..=6 {
        let solid = kuehnel_solid(d).unwrap();
        let formula = beta1_dual_formula(&solid).map_err(|e| e.to_string())?;
        let betti = betti_z2(&solid.boundary_complex().unwrap());
        ensure(formula == 1 && betti.get(1) == 1, || format!("d={d}: formula {formula}, betti {:?}", betti.betti))?;
    }
    Ok(())
}

fn pairs(beta1: u64, d_max: u64) -> Result<Vec<(u64, u64)>, String> {
    Ok(parameter_solutions(beta1, d_max).map_err(|e| e.to_string())?.iter().map(|t| (t.d, t.f0)).collect())
}

fn parameters() -> Check {
    let two = pairs(2, 500)?;
    ensure(two == [(13, 35), (83, 204), (491, 1189)], || format!("beta1=2: {two:?}"))?;
    let one = pairs(1, 100)?;
    let expected: Vec<(u64, u64)> = (3..=100).map(|d| (d, 2 * d + 3)).collect();
    ensure(one == expected, || "beta1=1 family differs from 2d+3".into())?;
    let three = pairs(3, 4)?;
    ensure(three == [(4, 15)], || format!("beta1=3: {three:?}"))?;
    for (beta1, n) in [(8, 21), (14, 26), (42, 41)] {
        // Re-substitution in the defining quadratic.
        ensure((n - 5) * (n - 6) == beta1 * 5 * 6, || format!("({beta1}, {n}) does not solve the equation"))?;
        let found = pairs(beta1, 4)?;
        ensure(found.contains(&(4, n)), || format!("beta1={beta1}: {found:?} lacks n={n}"))?;
    }
    Ok(())
}

fn handle_fixture() -> Check {
    let d: Vertex = 4;
    let ball = SimplicialComplex::from_facets((0..=2 * d + 2).map(|i| Face::range(i, i + d + 1))).unwrap();
    let x = ball.boundary_complex().unwrap();
    let sigma1 = Face::range(0, d);
    let sigma2 = Face::range(2 * d + 3, 3 * d + 3);
    let psi = (0..=d).map(|j| (j, j + 2 * d + 3)).collect();
    let h = HandleMap::new(sigma1, sigma2, psi).map_err(|e| e.to_string())?;
    let y = handle_addition(&x, &h).map_err(|e| e.to_string())?;
    let torus = kuehnel_torus(d as usize).unwrap();
    let iso = are_isomorphic(&y, &torus).ok_or("handle result not isomorphic to the torus")?;
    ensure(iso.maps_onto(&y, &torus), || "bad witness".into())?;
    let (b0, b1) = (beta1_z2(&x), beta1_z2(&y));
    ensure(b0 == 0 && b1 == 1, || format!("beta1 {b0} -> {b1}"))?;
    ensure(x.num_vertices() - y.num_vertices() == d as usize + 1, || {
        format!("f0 {} -> {}", x.num_vertices(), y.num_vertices())
    })
}

/// Removes facets that meet the rest in one ridge and own a vertex no other
/// facet uses, until one simplex remains.
fn peels_to_simplex(m: &SimplicialComplex) -> bool {
    if m.is_empty() || !m.is_pure() {
        return false;
    }
    let mut facets: Vec<Face> = m.facets().to_vec();
    let size = facets[0].len();
    while facets.len() > 1 {
        let pick = (0..facets.len()).find(|&i| {
            let f = &facets[i];
            let others = facets.iter().enumerate().filter(|&(j, _)| j != i);
            let ridge_mates = others.clone().filter(|(_, g)| f.intersection(g).len() == size - 1).count();
            let private = f.vertices().iter().filter(|&&v| others.clone().all(|(_, g)| !g.contains(v))).count();
            ridge_mates == 1 && private == 1
        });
        match pick {
            Some(i) => {
                facets.remove(i);
            }
            None => return false,
        }
    }
    true
}

fn stacked_recognition() -> Check {
    let mut rng = SplitMix64::seed_from_u64(2024);
    for i in 0..200u64 {
        let d = 2 + (i % 5) as usize;
        let m = 1 + (rng.next_u64() % 30) as usize;
        let ball = random_stacked_ball(d, m, i).unwrap();
        ensure(is_stacked_ball(&ball) && peels_to_simplex(&ball), || format!("seed {i}: ball not recognized"))?;
        // A perturbed complex: drop one facet, which may or may not leave a ball.
        if ball.num_facets() > 2 {
            let drop = (rng.next_u64() % ball.num_facets() as u64) as usize;
            let rest: Vec<Face> =
                ball.facets().iter().enumerate().filter(|&(j, _)| j != drop).map(|(_, f)| f.clone()).collect();
            let rest = SimplicialComplex::from_facets(rest).unwrap();
            ensure(is_stacked_ball(&rest) == peels_to_simplex(&rest), || format!("seed {i}: criteria disagree"))?;
        }
        let sphere = ball.boundary_complex().unwrap();
        ensure(is_stacked_sphere(&sphere).unwrap_or(false), || format!("seed {i}: boundary not a stacked sphere"))?;
        let mut expected = vec![0u64; d];
        expected[0] = 1;
        expected[d - 1] = 1;
        let betti = betti_z2(&sphere).betti;
        ensure(betti == expected, || format!("seed {i}: sphere betti {betti:?}"))?;
    }
    Ok(())
}

fn random_permutation(n: usize, rng: &mut SplitMix64) -> Vec<Vertex> {
    let mut p: Vec<Vertex> = (0..n as Vertex).collect();
    for i in (1..n).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        p.swap(i, j);
    }
    p
}

fn reconstruction() -> Check {
    let mut rng = SplitMix64::seed_from_u64(99);
    for d in 4..=6 {
        let solid = kuehnel_solid(d).unwrap();
        for trial in 0..20 {
            let perm = random_permutation(2 * d + 3, &mut rng);
            let pi = VertexBijection::new(perm.iter().enumerate().map(|(v, &w)| (v as Vertex, w)).collect()).unwrap();
            let relabeled = pi.apply(&solid).unwrap();
            let phi = uniqueness_reconstruction(&relabeled).map_err(|e| format!("d={d} trial {trial}: {e}"))?;
            ensure(phi.maps_onto(&solid, &relabeled), || format!("d={d} trial {trial}: invalid map"))?;
            let auto = phi.then(&pi.inverse()).unwrap();
            ensure(auto.maps_onto(&solid, &solid), || format!("d={d} trial {trial}: not an automorphism"))?;
        }
    }
    Ok(())
}

fn corpus() -> Vec<(String, SimplicialComplex)> {
    let mut out = Vec::new();
    for d in 2..=5 {
        out.push((format!("solid {d}"), kuehnel_solid(d).unwrap()));
        out.push((format!("torus {d}"), kuehnel_torus(d).unwrap()));
        out.push((format!("simplex boundary {d}"), SimplicialComplex::simplex_boundary(d)));
    }
    for seed in 0..6 {
        let ball = random_stacked_ball(3 + seed as usize % 3, 12, seed).unwrap();
        out.push((format!("sphere {seed}"), ball.boundary_complex().unwrap()));
        out.push((format!("ball {seed}"), ball));
    }
    out.push((
        "projective plane".into(),
        SimplicialComplex::from_vertex_lists([
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 5, 1],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 1],
            [4, 5, 2],
            [5, 1, 3],
        ])
        .unwrap(),
    ));
    out.push((
        "mixed".into(),
        SimplicialComplex::from_vertex_lists(vec![vec![0, 1, 2, 3], vec![3, 4], vec![5]]).unwrap(),
    ));
    out
}

fn chain_axioms() -> Check {
    for (name, x) in corpus() {
        let cc = chain_complex(&x);
        let top = cc.top_dim().unwrap_or(0);
        for k in 2..=top {
            ensure(cc.composition_vanishes(k), || format!("{name}: boundary squared nonzero at {k}"))?;
        }
        let betti = cc.betti();
        ensure(betti.euler() == x.f_vector().euler, || format!("{name}: euler mismatch"))?;
    }
    Ok(())
}

fn critical_cover() -> Check {
    let mut rng = SplitMix64::seed_from_u64(7);
    for d in 3..=6 {
        let solid = kuehnel_solid(d).unwrap();
        let dim = solid.dim();
        let nu = solid.num_facets();
        let limit = solid.num_vertices() - dim;
        let mut found = 0;
        let mut tries = 0;
        while found < 50 {
            tries += 1;
            if tries > 100_000 {
                return Err(format!("d={d}: only {found} critical sets sampled"));
            }
            let mask = rng.next_u64();
            let s: Vec<usize> = (0..nu).filter(|&i| mask >> i & 1 == 1).collect();
            let critical = is_critical(&solid, &s).map_err(|e| e.to_string())?;
            // On a cycle of facets, components are the gaps between removed nodes.
            let oracle = !s.is_empty() && {
                let dual = dual_graph(&solid).unwrap();
                let removed: BTreeSet<usize> = s.iter().copied().collect();
                let mut order = vec![0usize];
                let mut prev = usize::MAX;
                while order.len() < nu {
                    let cur = *order.last().unwrap();
                    let next = dual.graph().neighbors(cur).iter().copied().find(|&w| w != prev).unwrap();
                    prev = cur;
                    order.push(next);
                }
                let first = order.iter().position(|u| removed.contains(u)).unwrap();
                let mut gap = 0;
                let mut worst = 0;
                for k in 1..=nu {
                    if removed.contains(&order[(first + k) % nu]) {
                        gap = 0;
                    } else {
                        gap += 1;
                        worst = worst.max(gap);
                    }
                }
                worst < limit
            };
            ensure(critical == oracle, || format!("d={d}: criticality oracle disagrees on {s:?}"))?;
            if critical {
                found += 1;
                ensure(is_cover(&solid, &s).unwrap(), || format!("d={d}: critical set {s:?} is not a cover"))?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("cyclic torus generator suite", 5, kuehnel_suite),
        ("closure and boundary round trip", 5, bar_round_trip),
        ("dual graph counting", 2, counting),
        ("first Betti number cross-check", 30, beta1_cross),
        ("parameter arithmetic", 1, parameters),
        ("handle addition fixture", 10, handle_fixture),
        ("stacked recognition equivalence", 20, stacked_recognition),
        ("uniqueness reconstruction", 10, reconstruction),
        ("chain complex axioms", 10, chain_axioms),
        ("critical sets are covers", 5, critical_cover),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let outcome = match result {
            Ok(()) if elapsed < Duration::from_secs(limit) => Ok(()),
            Ok(()) => Err(format!("took {:.2} s", elapsed.as_secs_f64())),
            Err(e) => Err(e),
        };
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({:.2} s, limit {limit} s)", i + 1, elapsed.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({:.2} s, limit {limit} s): {e}", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
