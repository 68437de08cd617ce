use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use shiftdim::bimodule::{build_sigma, tensor_map, BasedBimodule, BimoduleMap, EdgeSet, VertexSet};
use shiftdim::dimgroup::EssentialMatrix;
use shiftdim::shift::{search_se, SearchConfig};
use shiftdim::Execution;

fn e(rows: &[Vec<i64>]) -> EssentialMatrix {
    EssentialMatrix::from_rows(rows).unwrap()
}

fn search_benchmark(c: &mut Criterion) {
    // Williams' pair: shift equivalent, first witness at lag 3.
    let pairs = [
        ("williams", e(&[vec![1, 3], vec![2, 1]]), e(&[vec![1, 6], vec![1, 1]])),
        ("ones3", e(&vec![vec![1, 1, 1]; 3]), e(&vec![vec![1, 1, 1]; 3])),
    ];
    for (label, a, b) in &pairs {
        for (mode, execution) in [("serial", Execution::Sequential), ("parallel", Execution::Parallel)] {
            let config = SearchConfig { m_max: 3, coeff_bound: 3, execution };
            c.bench_function(&format!("search {label} {mode}"), |bench| {
                bench.iter(|| search_se(black_box(a), black_box(b), &config).unwrap())
            });
        }
    }
}

fn tensor_benchmark(c: &mut Criterion) {
    let v = VertexSet::numbered("v", 2);
    let a = EdgeSet::of_graph(v.clone(), e(&[vec![3, 2], vec![2, 3]]).matrix().clone()).unwrap();
    let r = EdgeSet::new(v.clone(), v, shiftdim::IntMatrix::identity(2)).unwrap();
    let sigma = build_sigma(&a, &r, &a).unwrap();
    let id = BimoduleMap::identity(&BasedBimodule::power(&a, 2).unwrap());
    for (name, execution) in [("tensor serial", Execution::Sequential), ("tensor parallel", Execution::Parallel)] {
        c.bench_function(name, |bench| {
            bench.iter(|| tensor_map(black_box(&sigma), black_box(&id), execution).unwrap())
        });
    }
}

criterion_group!(benches, search_benchmark, tensor_benchmark);
criterion_main!(benches);
