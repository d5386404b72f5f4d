//! End-to-end acceptance checks, one per certification criterion. Each test
//! prints a `criterion N: PASS` line once its claims are verified exactly.

use fdel::advice::{bit_length, self_delimiting_len, AdviceTape};
use fdel::engine::{run, Element, OnlineInstance};
use fdel::gadgets::{
    clique_join_family, clique_join_instance, connected_lb_family, disconnected_lb_family,
    duality_transform, e_extension, edge_lb_family, independent_join_family, isolated_prefix,
    Family,
};
use fdel::graph::Graph;
use fdel::iso::{contains_induced, enumerate_graphs, is_isomorphic};
use fdel::obstruction::{
    extremal_remainder, is_sub_h_union, not_sub_h_union_family, ramsey_bound, ExtremalMode, Mode,
    ObstructionSet,
};
use fdel::offline::{offline_optimum, SearchBudget};
use fdel::strategy::{log_budget, naive_budget, naive_index_width, run_with_log, run_with_naive};
use fdel::verifier::{audit_bits, verify_family, verify_unique_optimum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn set(members: Vec<Graph>) -> ObstructionSet {
    ObstructionSet::reduced(members).unwrap()
}

fn two_k2() -> Graph {
    Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap()
}

/// The node-mode obstruction pools used by the random sweeps.
fn node_pools() -> Vec<ObstructionSet> {
    vec![
        set(vec![Graph::complete(3)]),
        set(vec![Graph::path(3)]),
        set(vec![two_k2()]),
    ]
}

/// Random node instances: up to 9 vertices, varying density.
fn random_node_instance(rng: &mut ChaCha8Rng) -> OnlineInstance {
    let n = rng.gen_range(2..=9);
    let density = rng.gen_range(0.15..0.85);
    OnlineInstance::node(Graph::random(n, density, rng))
}

/// Random edge instances capped at 12 edges.
fn random_edge_instance(rng: &mut ChaCha8Rng) -> OnlineInstance {
    loop {
        let n = rng.gen_range(2..=7);
        let density = rng.gen_range(0.15..0.75);
        let g = Graph::random(n, density, rng);
        if g.size() <= 12 {
            return OnlineInstance::edge(g);
        }
    }
}

/// The four certified families plus the dual join family.
fn certified_families() -> Vec<(Family, ObstructionSet)> {
    let p3 = Graph::path(3);
    let f_threshold = set(vec![Graph::complete(3), Graph::empty(3)]);
    let cert = ramsey_bound(&f_threshold, 8).unwrap().unwrap();
    let d_max = extremal_remainder(&f_threshold, &cert, ExtremalMode::MaxEdges).unwrap();
    let d_min = extremal_remainder(&f_threshold, &cert, ExtremalMode::MinEdges).unwrap();
    vec![
        (connected_lb_family(&p3, 2).unwrap(), set(vec![p3.clone()])),
        (disconnected_lb_family(&two_k2(), 2).unwrap(), set(vec![two_k2()])),
        (edge_lb_family(&two_k2(), 2).unwrap(), set(vec![two_k2()])),
        (clique_join_family(&f_threshold, &d_max, 4).unwrap(), f_threshold.clone()),
        (independent_join_family(&f_threshold, &d_min, 4).unwrap(), f_threshold),
    ]
}

#[test]
fn criterion_1_naive_strategies_match_the_oracle() {
    let budget = SearchBudget::default();
    let pools = node_pools();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC1);
    for i in 0..200 {
        let f = &pools[i % pools.len()];
        let instance = random_node_instance(&mut rng);
        let run = run_with_naive(&instance, f, budget, i as u64).unwrap();
        assert_eq!(
            run.trace.deletions, run.opt,
            "node sweep #{i} missed the optimum on {:?}",
            instance.graph
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC2);
    for i in 0..200 {
        let f = &pools[i % pools.len()];
        let instance = random_edge_instance(&mut rng);
        let run = run_with_naive(&instance, f, budget, i as u64).unwrap();
        assert_eq!(
            run.trace.deletions, run.opt,
            "edge sweep #{i} missed the optimum on {:?}",
            instance.graph
        );
    }
    for (family, f) in certified_families() {
        for member in &family.members {
            let run = run_with_naive(&member.instance, &f, budget, 7).unwrap();
            assert_eq!(run.opt, family.opt);
            assert_eq!(run.trace.deletions, family.opt, "family {} member missed", family.kind);
        }
    }
    println!("criterion 1: PASS");
}

#[test]
fn criterion_2_naive_bit_budgets_are_exact() {
    let budget = SearchBudget::default();
    let pools = node_pools();
    let mut rng = ChaCha8Rng::seed_from_u64(0xB175);
    for i in 0..200 {
        let f = &pools[i % pools.len()];
        let instance = if i % 2 == 0 {
            random_node_instance(&mut rng)
        } else {
            random_edge_instance(&mut rng)
        };
        let width = naive_index_width(f, instance.mode);
        let run = run_with_naive(&instance, f, budget, i as u64).unwrap();
        assert!(
            audit_bits(&run.trace, naive_budget(run.opt, width)),
            "sweep #{i}: {} bits read, budget {}",
            run.trace.total_bits,
            naive_budget(run.opt, width)
        );
        assert_eq!(run.trace.total_bits, run.bits_written);
    }
    // Anchor: two triangle gadgets cost 5 bits for the count plus two
    // 2-bit indices, 9 in total, on every member of the family.
    let family = connected_lb_family(&Graph::complete(3), 2).unwrap();
    let f = set(vec![Graph::complete(3)]);
    for member in &family.members {
        let run = run_with_naive(&member.instance, &f, budget, 11).unwrap();
        assert_eq!(run.opt, 2);
        assert!(audit_bits(&run.trace, 9));
    }
    assert_eq!(naive_budget(2, naive_index_width(&f, Mode::Node)), 9);
    println!("criterion 2: PASS");
}

#[test]
fn criterion_3_log_strategy_certified_threshold_and_budgets() {
    let f = set(vec![Graph::complete(3), Graph::empty(3)]);
    let cert = ramsey_bound(&f, 8).unwrap().unwrap();
    assert_eq!(cert.r, 6);
    assert!(f.is_free(&cert.witness));
    assert_eq!(cert.witness.order(), 5);
    let d = extremal_remainder(&f, &cert, ExtremalMode::MaxEdges).unwrap();
    let budget = SearchBudget::default();

    for opt in [4usize, 5] {
        let family = clique_join_family(&f, &d, opt).unwrap();
        let expected_members = if opt == 4 { 15 } else { 21 };
        assert_eq!(family.members.len(), expected_members);
        for member in &family.members {
            let run = run_with_log(&member.instance, &f, &cert, budget, 3).unwrap();
            assert_eq!(run.opt, opt);
            assert_eq!(run.trace.deletions, opt);
            if opt == 4 {
                assert!(audit_bits(&run.trace, 30), "read {} bits", run.trace.total_bits);
            }
        }
    }

    // Budget growth across deletion targets: survivor pairs cost
    // ceil(log2 opt) + 2 bits each, five pairs, plus the 3-bit survivor
    // count and the self-delimited optimum.
    for opt in 4..=8 {
        let instance = clique_join_instance(&f, &d, opt, &[0, 1]).unwrap();
        let run = run_with_log(&instance, &f, &cert, budget, 5).unwrap();
        assert_eq!(run.trace.deletions, opt);
        let u = cert.r - 1;
        let expected =
            u * (bit_length(opt as u64 - 1) + 2) + 3 + self_delimiting_len(opt as u64);
        assert_eq!(run.trace.total_bits, expected);
        assert_eq!(expected, log_budget(opt, u, cert.r, f.max_order()));
        let pinned = [30, 35, 35, 35, 37][opt - 4];
        assert_eq!(expected, pinned);
    }
    println!("criterion 3: PASS");
}

#[test]
fn criterion_4_family_distinguishability_counts() {
    let budget = SearchBudget::default();
    let expectations: &[(usize, usize, usize)] =
        &[(9, 9, 4), (16, 16, 4), (4, 4, 2), (15, 15, 4), (15, 15, 4)];
    for ((family, f), &(size, leaves, bits)) in certified_families().iter().zip(expectations) {
        let report = verify_family(family, f, budget).unwrap();
        assert_eq!(report.family_size, size, "family {}", family.kind);
        assert_eq!(report.leaves, leaves, "family {}", family.kind);
        assert_eq!(report.bits, bits, "family {}", family.kind);
        for member in &family.members {
            assert!(verify_unique_optimum(
                &member.instance,
                f,
                &member.expected_optimum,
                budget
            )
            .unwrap());
        }
    }
    println!("criterion 4: PASS");
}

#[test]
fn criterion_5_extension_axioms_sweep() {
    let mut bases = Vec::new();
    for n in 2..=6 {
        for g in enumerate_graphs(n, false).unwrap() {
            if !g.is_connected() && g.isolated_vertices().is_empty() {
                bases.push(g);
            }
        }
    }
    assert_eq!(bases.len(), 13, "disconnected isolated-free classes up to order 6");
    let mut checked = 0;
    for h in &bases {
        for e in h.edges() {
            // The constructor machine-checks all three axioms and fails
            // loudly otherwise.
            let ext = e_extension(h, e).unwrap();
            assert_eq!(ext.u.order(), 2 * h.order() - 2);
            assert_eq!(ext.u.size(), 2 * h.size() - 1 + (h.order() - 2) * (h.order() - 2));
            checked += 1;
        }
    }
    assert!(checked >= bases.len());
    println!("criterion 5: PASS ({checked} extensions over {} bases)", bases.len());
}

#[test]
fn criterion_6_complement_duality() {
    let budget = SearchBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xD0A1);
    for i in 0..100 {
        let n = rng.gen_range(1..=8);
        let instance = OnlineInstance::node(Graph::random(n, rng.gen_range(0.2..0.8), &mut rng));
        let members = (0..rng.gen_range(1..=2))
            .map(|_| {
                let k = rng.gen_range(2..=4);
                Graph::random(k, rng.gen_range(0.2..0.8), &mut rng)
            })
            .collect::<Vec<_>>();
        let f = set(members);
        let (dual_instance, dual_f) = duality_transform(&instance, &f).unwrap();

        let original = offline_optimum(&instance, &f, budget).unwrap();
        let dual = offline_optimum(&dual_instance, &dual_f, budget).unwrap();
        assert_eq!(original.size, dual.size, "pair #{i}: optimum sizes differ");
        assert_eq!(original.smallest(), dual.smallest(), "pair #{i}: label sets differ");

        let mut lazy = fdel::strategy::LazyOptimal::new(original.smallest());
        let trace = run(&instance, &f, &mut lazy, &mut AdviceTape::new()).unwrap();
        let mut dual_lazy = fdel::strategy::LazyOptimal::new(dual.smallest());
        let dual_trace =
            run(&dual_instance, &dual_f, &mut dual_lazy, &mut AdviceTape::new()).unwrap();
        assert_eq!(
            trace.deleted_set(),
            dual_trace.deleted_set(),
            "pair #{i}: forced deletions differ"
        );
    }
    println!("criterion 6: PASS");
}

#[test]
fn criterion_7_union_decomposition_characterizations() {
    let mut hosts = Vec::new();
    for n in 0..=6 {
        hosts.extend(enumerate_graphs(n, false).unwrap());
    }
    // Join parts must cover the graph, be fully joined pairwise, and be
    // indivisible -- checked against first principles, not the helper.
    for g in &hosts {
        let parts = g.join_decomposition();
        let mut seen: Vec<usize> = parts.concat();
        seen.sort_unstable();
        assert_eq!(seen, (0..g.order()).collect::<Vec<_>>());
        for (i, a) in parts.iter().enumerate() {
            for b in parts.iter().skip(i + 1) {
                for &u in a {
                    for &v in b {
                        assert!(g.has_edge(u, v), "parts not joined in {g:?}");
                    }
                }
            }
            let part = g.induced(a).complement();
            assert!(part.is_connected(), "part divisible in {g:?}");
        }
        let complement_components = g.complement().connected_components();
        assert_eq!(parts, complement_components);
    }

    let mut patterns = Vec::new();
    for n in 1..=4 {
        patterns.extend(enumerate_graphs(n, false).unwrap());
    }
    for h in &patterns {
        let family = not_sub_h_union_family(h).unwrap();
        for g in &hosts {
            let hit = family.iter().any(|m| contains_induced(m, g));
            assert_eq!(
                is_sub_h_union(g, h),
                !hit,
                "characterization failed for pattern {h:?} on host {g:?}"
            );
        }
    }

    let family = not_sub_h_union_family(&Graph::path(3)).unwrap();
    assert_eq!(family.len(), 2);
    assert!(family.iter().any(|m| is_isomorphic(m, &Graph::path(3)).unwrap()));
    assert!(family.iter().any(|m| is_isomorphic(m, &Graph::complete(3)).unwrap()));
    println!("criterion 7: PASS");
}

#[test]
fn criterion_8_isolated_vertex_reduction() {
    let budget = SearchBudget::default();
    let h_with_isolated = Graph::from_edges(5, &[(0, 1), (2, 3)]).unwrap();
    let inner_base = two_k2();
    let f_outer = set(vec![h_with_isolated.clone()]);
    let f_inner = set(vec![inner_base.clone()]);
    let family = edge_lb_family(&inner_base, 1).unwrap();
    assert_eq!(family.members.len(), 2);
    for member in &family.members {
        let inner = &member.instance;
        let prefixed = isolated_prefix(&h_with_isolated, inner).unwrap();

        let inner_opt = offline_optimum(inner, &f_inner, budget).unwrap();
        let outer_opt = offline_optimum(&prefixed, &f_outer, budget).unwrap();
        assert_eq!(inner_opt.size, outer_opt.size);
        let shifted: Vec<Vec<Element>> = inner_opt
            .solutions
            .iter()
            .map(|sol| {
                sol.iter()
                    .map(|el| match el {
                        Element::Edge(u, v) => Element::Edge(u + 1, v + 1),
                        Element::Vertex(v) => Element::Vertex(v + 1),
                    })
                    .collect()
            })
            .collect();
        assert_eq!(shifted, outer_opt.solutions);

        let mut lazy = fdel::strategy::LazyOptimal::new(inner_opt.smallest());
        let inner_trace = run(inner, &f_inner, &mut lazy, &mut AdviceTape::new()).unwrap();
        let mut outer_lazy = fdel::strategy::LazyOptimal::new(outer_opt.smallest());
        let outer_trace =
            run(&prefixed, &f_outer, &mut outer_lazy, &mut AdviceTape::new()).unwrap();
        let inner_steps: Vec<usize> = inner_trace
            .steps
            .iter()
            .filter(|s| !s.events.is_empty())
            .map(|s| s.step)
            .collect();
        let outer_steps: Vec<usize> = outer_trace
            .steps
            .iter()
            .filter(|s| !s.events.is_empty())
            .map(|s| s.step)
            .collect();
        assert_eq!(
            inner_steps.iter().map(|s| s + 1).collect::<Vec<_>>(),
            outer_steps,
            "deletion steps must shift by exactly the one isolated reveal"
        );
    }
    println!("criterion 8: PASS");
}
