// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use proptest::prelude::{prop, prop_assert, prop_assert_eq, proptest, ProptestConfig};
use proptest::strategy::Strategy as _;

use ktruss::graph_io::{build_csr, canonicalize, EdgeList};
use ktruss::oracle::{oracle_edge_supports, oracle_ktruss, AdjacencySets};
use ktruss::truss::{compute_supports, ktruss, Strategy, SupportArray, TrussRun, Workers};

fn raw_pairs() -> impl proptest::strategy::Strategy<Value = Vec<(u64, u64)>> {
    (3u64..40).prop_flat_map(|n| prop::collection::vec((0..n, 0..n), 1..200))
}

fn graph() -> impl proptest::strategy::Strategy<Value = EdgeList> {
    raw_pairs().prop_filter_map("needs one non-loop edge", |p| canonicalize(&p).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn csr_round_trips_edges(g in graph()) {
        let csr = build_csr(&g).unwrap();
        prop_assert_eq!(csr.total_slots(), g.num_edges() + g.num_vertices() as usize);
        prop_assert_eq!(csr.extract_edges(), g.edges().to_vec());
        prop_assert!(csr.validate().is_ok());
    }

    #[test]
    fn canonicalize_is_idempotent(g in graph()) {
        let again = canonicalize(&g.as_raw_pairs()).unwrap();
        prop_assert_eq!(again.num_vertices(), g.num_vertices());
        prop_assert_eq!(again.edges(), g.edges());
    }

    #[test]
    fn supports_match_oracle_for_every_strategy(g in graph(), threads in 1usize..5) {
        let csr = build_csr(&g).unwrap();
        let workers = Workers::new(threads).unwrap();
        let expected: Vec<u32> = oracle_edge_supports(&g).into_values().collect();
        for strategy in Strategy::ALL {
            let s: SupportArray = SupportArray::new(csr.total_slots());
            let tri = compute_supports(&csr, &s, strategy, &workers).unwrap();
            prop_assert_eq!(s.sum(), 3 * tri);
            let got: Vec<u32> = csr.extract_edges_with(&s.to_vec()).into_iter().map(|e| e.2).collect();
            prop_assert_eq!(&got, &expected);
        }
    }

    #[test]
    fn truss_is_sound_monotone_and_idempotent(g in graph(), k in 2u32..7) {
        let csr = build_csr(&g).unwrap();
        let workers = Workers::new(3).unwrap();
        let lower = ktruss(&csr, k, Strategy::Fine, &workers).unwrap();
        let upper = ktruss(&csr, k + 1, Strategy::Coarse, &workers).unwrap();

        prop_assert!(lower.edges.iter().all(|e| e.support + 2 >= k));
        prop_assert_eq!(lower.removed_per_iteration.last(), Some(&0));
        prop_assert!(lower.removed_per_iteration[..lower.iterations - 1].iter().all(|&r| r > 0));

        let lower_pairs = lower.edge_pairs();
        prop_assert!(upper.edge_pairs().iter().all(|e| lower_pairs.binary_search(e).is_ok()));

        let oracle: Vec<(u32, u32)> = oracle_ktruss(&g, k).unwrap().into_iter().collect();
        prop_assert_eq!(&lower_pairs, &oracle);

        if !lower.is_empty() {
            let sub = EdgeList::with_identity_labels(g.num_vertices(), lower_pairs).unwrap();
            let mut run: TrussRun = TrussRun::new(build_csr(&sub).unwrap(), k, Strategy::Fine, &workers).unwrap();
            prop_assert_eq!(run.step().unwrap(), 0);
        }
    }

    #[test]
    fn results_do_not_depend_on_thread_count(g in graph()) {
        let csr = build_csr(&g).unwrap();
        let one = ktruss(&csr, 4, Strategy::Fine, &Workers::new(1).unwrap()).unwrap();
        let many = ktruss(&csr, 4, Strategy::Fine, &Workers::new(7).unwrap()).unwrap();
        prop_assert_eq!(one, many);
    }

    #[test]
    fn oracle_supports_follow_relabeling(g in graph(), shift in 1u32..1000) {
        // Reverse the vertex order: v -> n + 1 - v.
        let n = g.num_vertices();
        let flip = |v: u32| n + 1 - v;
        let raw: Vec<(u64, u64)> = g
            .edges()
            .iter()
            .map(|&(u, v)| (u64::from(flip(u) + shift), u64::from(flip(v) + shift)))
            .collect();
        let permuted = canonicalize(&raw).unwrap();
        let before = oracle_edge_supports(&g);
        let after = oracle_edge_supports(&permuted);
        for ((u, v), s) in before {
            let (a, b) = (flip(v), flip(u));
            prop_assert_eq!(after[&(a, b)], s);
        }
        let adj = AdjacencySets::from_edge_list(&g);
        for v in 1..=n {
            prop_assert!(adj.neighbors(v).iter().all(|&w| adj.neighbors(w).contains(&v)));
        }
    }
}
