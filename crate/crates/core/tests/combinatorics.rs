use num_bigint::BigUint;
use num_rational::BigRational;
use orientcount::alpha_engine::{count, count_problem, CountOptions, Problem};
use orientcount::combinatorics::*;
use orientcount::fixtures::{random_alpha_instance, random_stacked, random_triangulation};
use orientcount::generators::*;
use orientcount::planar_map::*;
use orientcount::structures::{count_bipolar, outer_specials};
use proptest::prelude::*;

fn fib_oracle(n: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::from(0u32), BigUint::from(1u32));
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    a
}

fn binom(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

fn inner_active(map: &PlanarMap) -> Vec<bool> {
    let outer = map.outer_face();
    (0..map.edge_count())
        .map(|e| map.face_of(2 * e) != outer && map.face_of(2 * e + 1) != outer)
        .collect()
}

fn schnyder_alpha(map: &PlanarMap) -> Vec<u32> {
    let sp = outer_specials(map).unwrap();
    (0..map.vertex_count()).map(|v| if sp.contains(&v) { 0 } else { 3 }).collect()
}

fn brute_mwis(adj: &[Vec<Vertex>], weight: &[f64]) -> f64 {
    let n = adj.len();
    (0u32..1 << n)
        .filter(|s| (0..n).all(|v| s >> v & 1 == 0 || adj[v].iter().all(|&w| s >> w & 1 == 0)))
        .map(|s| (0..n).filter(|v| s >> v & 1 == 1).map(|v| weight[v]).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Every report dominates `measured`, exactly.
fn assert_dominated(label: &str, reports: &[BoundReport], measured: &BigUint) {
    assert!(!reports.is_empty());
    for r in reports {
        let r = r.clone().with_measured(measured);
        assert_eq!(r.dominates, Some(true), "{label}: {} = {} < {measured}", r.name, r.value);
        assert!(r.exact.dominates(measured));
    }
}

#[test]
fn fibonacci_identities_up_to_forty() {
    for n in 0..=40 {
        assert_eq!(fibonacci(n), fib_oracle(n));
        let rep = fib_suite(n);
        assert!(rep.all_hold(), "n={n}: {rep:?}");
        assert_eq!(rep.enumeration.is_some(), n <= 20);
        assert_eq!(rep.f_n, fib_oracle(n).to_string());
    }
}

#[test]
fn sparse_sequences_of_length_three_and_four() {
    assert_eq!(sparse_sequences(3), vec![0b000, 0b001, 0b010, 0b100, 0b101]);
    let r4 = fib_suite(4);
    assert_eq!(r4.r[1], "2");
    let total: u32 = r4.r.iter().map(|x| x.parse::<u32>().unwrap()).sum();
    assert_eq!(total, 10);
    let with_second = sparse_sequences(4).iter().filter(|&&s| s & 0b10 != 0).count();
    assert_eq!(with_second, 2);
}

#[test]
fn crossover_values_and_certificate() {
    let seq = crossover(2);
    let pairs: Vec<(u32, u32)> = seq
        .iter()
        .map(|(x, y)| (x.try_into().unwrap(), y.try_into().unwrap()))
        .collect();
    assert_eq!(pairs, vec![(1, 1), (6, 7), (38, 45)]);
    let cert = crossover_certificate(200);
    assert!(cert.decreasing && cert.above_limit);
    let seq = crossover(200);
    // Independent check with rationals and the float limit.
    let ratios: Vec<BigRational> = seq
        .iter()
        .map(|(x, y)| BigRational::new(x.clone().into(), y.clone().into()))
        .collect();
    assert!(ratios.windows(2).all(|w| w[1] < w[0]));
    let last = ratios.last().unwrap();
    let approx = num_traits::ToPrimitive::to_f64(last).unwrap();
    assert!((approx - crossover_limit()).abs() < 1e-12);
}

#[test]
fn catalan_schnyder_and_baxter_values() {
    for n in 0..20 {
        assert_eq!(catalan(n), binom(2 * n as u64, n as u64) / (n as u64 + 1));
    }
    assert_eq!(catalan(4), 14u32.into());
    let totals: Vec<i64> = (1..=6).map(|n| schnyder_total(n).try_into().unwrap()).collect();
    assert_eq!(totals, vec![1, 3, 14, 84, 594, 4719]);
    let bax: Vec<u64> = (1..=8).map(|n| baxter(n).try_into().unwrap()).collect();
    assert_eq!(bax, vec![1, 2, 6, 22, 92, 422, 2074, 10754]);
    // (n+2)(n+3) B_n = (7n²+7n-2) B_{n-1} + 8(n-1)(n-2) B_{n-2}.
    for n in 3..30u64 {
        let lhs = baxter(n as usize) * ((n + 2) * (n + 3));
        let rhs = baxter(n as usize - 1) * (7 * n * n + 7 * n - 2) + baxter(n as usize - 2) * (8 * (n - 1) * (n - 2));
        assert_eq!(lhs, rhs, "n={n}");
    }
    let table = sequence_table(30);
    assert_eq!(table.len(), 30);
    assert_eq!(table[3].catalan, "14");
}

#[test]
fn local_ratio_inequalities() {
    for d in 3..=20 {
        assert!(central_ratio_below_three_quarters(d), "d={d}");
        assert!(schnyder_ratio_below_five_eighths(d), "d={d}");
    }
    // d = 2 is the excluded degree: binom(2,1)/2 = 1.
    assert!(!central_ratio_below_three_quarters(2));
    for n in 1..=10_000 {
        assert!(corollary_constant_holds(n));
    }
}

#[test]
fn k4_spanning_forest_bound() {
    let k = k4();
    let alpha = schnyder_alpha(&k);
    let all = alpha_bounds(&k, &alpha, None);
    let forest = all.iter().find(|r| r.name.starts_with("spanning-forest")).unwrap();
    assert_eq!(forest.m, 6);
    assert!((forest.value - 8.0).abs() < 1e-12);
    let active = inner_active(&k);
    let p = Problem::with_active(&k, &alpha, Some(&active)).unwrap();
    let measured = count_problem(&p);
    assert_eq!(measured, 1u32.into());
    assert!(forest.exact.dominates(&measured));
    assert_dominated("k4", &alpha_bounds(&k, &alpha, Some(&active)), &measured);
}

#[test]
fn bound_names_follow_the_setting() {
    let oct = octahedron();
    let names = |r: Vec<BoundReport>| r.into_iter().map(|r| r.name).collect::<Vec<_>>();
    let n = names(alpha_bounds(&oct, &schnyder_alpha(&oct), Some(&inner_active(&oct))));
    assert!(n.iter().any(|x| x == "3.56^n") && n.iter().any(|x| x == "3.73^n"));
    assert!(!n.iter().any(|x| x == "1.91^n"));
    let q = generate(&FamilySpec::new(Family::QuadGrid, 3, 3)).unwrap();
    let n = names(alpha_bounds(&q.map, q.alpha.as_ref().unwrap(), None));
    assert!(n.iter().any(|x| x == "1.91^n") && !n.iter().any(|x| x == "3.56^n"));
    // The torus is not planar: only the forest bound applies.
    let t = generate(&FamilySpec::new(Family::TorusGrid, 3, 3)).unwrap();
    let n = names(alpha_bounds(&t.map, &vec![2; 9], None));
    assert_eq!(n.len(), 1);
}

#[test]
fn formula_constants_are_stored() {
    let c = formula_constants();
    let lieb = c.iter().find(|c| c.name == "lieb").unwrap();
    assert!((lieb.value - 1.53960).abs() < 1e-5);
    assert!(c.iter().all(|c| !c.provenance.is_empty()));
    let limit = c.iter().find(|c| c.name == "crossover-limit").unwrap();
    assert!((limit.value - (1.0 + 33f64.sqrt()) / 8.0).abs() < 1e-12);
}

#[test]
fn bounds_dominate_on_the_triangulation_corpus() {
    let mut corpus = vec![("k4".to_string(), k4()), ("octahedron".to_string(), octahedron())];
    for n in 4..=9 {
        corpus.push((format!("stacked {n}"), random_stacked(n, n as u64)));
    }
    for seed in 0..6 {
        corpus.push((format!("triangulation {seed}"), random_triangulation(8, seed, 30)));
    }
    for (label, map) in &corpus {
        let alpha = schnyder_alpha(map);
        let active = inner_active(map);
        let p = Problem::with_active(map, &alpha, Some(&active)).unwrap();
        assert_dominated(label, &alpha_bounds(map, &alpha, Some(&active)), &count_problem(&p));
        let outer = map.outer_walk();
        let (s, t) = (map.origin(outer[0]), map.target(outer[0]));
        let b = count_bipolar(map, s, t, CountOptions::default()).unwrap();
        assert_dominated(label, &bipolar_bounds(map, s, t), &b);
    }
}

#[test]
fn bounds_dominate_on_grids() {
    for (k, l) in [(3, 3), (3, 4), (4, 4), (4, 5)] {
        let q = generate(&FamilySpec::new(Family::QuadGrid, k, l)).unwrap();
        let alpha = q.alpha.unwrap();
        let c = count(&q.map, &alpha).unwrap().count;
        assert_dominated(&format!("quad {k}x{l}"), &alpha_bounds(&q.map, &alpha, None), &c);
    }
    for (k, l) in [(3, 3), (3, 4), (4, 4)] {
        let g = generate(&FamilySpec::new(Family::TriGrid, k, l)).unwrap();
        let alpha = g.alpha.unwrap();
        let c = count(&g.map, &alpha).unwrap().count;
        assert_dominated(&format!("tri {k}x{l}"), &alpha_bounds(&g.map, &alpha, None), &c);
    }
}

#[test]
fn independent_set_matches_brute_force() {
    let cycle: Vec<Vec<Vertex>> = (0..7).map(|v| vec![(v + 1) % 7, (v + 6) % 7]).collect();
    let w = vec![1.0; 7];
    let set = max_weight_independent_set(&cycle, &w);
    assert_eq!(set.len(), 3);
    assert!((brute_mwis(&cycle, &w) - 3.0).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bounds_dominate_random_alpha_instances(seed in 0u64..2000) {
        let (map, alpha) = random_alpha_instance(seed, 14);
        let c = count(&map, &alpha).unwrap().count;
        for r in alpha_bounds(&map, &alpha, None) {
            let r = r.with_measured(&c);
            prop_assert_eq!(r.dominates, Some(true), "{} {}", r.name, c);
        }
    }

    #[test]
    fn bounds_dominate_random_triangulations(n in 4usize..10, seed in 0u64..1000) {
        let map = random_triangulation(n, seed, 40);
        let alpha = schnyder_alpha(&map);
        let active = inner_active(&map);
        let p = Problem::with_active(&map, &alpha, Some(&active)).unwrap();
        let c = count_problem(&p);
        for r in alpha_bounds(&map, &alpha, Some(&active)) {
            prop_assert!(r.exact.dominates(&c), "{} {}", r.name, c);
        }
        let outer = map.outer_walk();
        let (s, t) = (map.origin(outer[1]), map.target(outer[1]));
        let b = count_bipolar(&map, s, t, CountOptions::default()).unwrap();
        for r in bipolar_bounds(&map, s, t) {
            prop_assert!(r.exact.dominates(&b), "{} {}", r.name, b);
        }
    }

    #[test]
    fn independent_set_is_maximum(n in 1usize..12, bits in any::<u64>(), ws in prop::collection::vec(0.0f64..5.0, 12)) {
        let mut adj = vec![Vec::new(); n];
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                if bits >> (k % 64) & 1 == 1 {
                    adj[u].push(v);
                    adj[v].push(u);
                }
                k += 1;
            }
        }
        let w = &ws[..n];
        let set = max_weight_independent_set(&adj, w);
        for &u in &set {
            prop_assert!(adj[u].iter().all(|v| !set.contains(v)));
        }
        let got: f64 = set.iter().map(|&v| w[v]).sum();
        prop_assert!((got - brute_mwis(&adj, w)).abs() < 1e-9);
    }

    #[test]
    fn bound_values_agree_with_floats(num in 1u64..1000, den in 1u64..1000, root in 1u32..7) {
        let v = BoundValue { radicand: BigRational::new(num.into(), den.into()), root };
        let f = (num as f64 / den as f64).powf(1.0 / root as f64);
        prop_assert!((v.to_f64() - f).abs() < 1e-9 * f.max(1.0));
        let floor = BigUint::from(f.floor() as u64);
        prop_assert!(v.dominates(&floor));
        prop_assert!(!v.dominates(&(floor + 1u32)));
    }
}
