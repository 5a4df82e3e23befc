use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use david_core::grammar::{compare_bounded, to_cnf, BoundedOptions};
use david_core::homework::{q5_pda, UNEQUAL_CANCEL, UNEQUAL_UNION};
use david_core::model::{parse_cfg, Alphabet, Model};
use david_core::pda::pda_to_cnf;

fn bounded_enumeration(c: &mut Criterion) {
    let ab = Alphabet::new("ab".chars()).unwrap();
    let cancel = to_cnf(&parse_cfg(UNEQUAL_CANCEL, &ab).unwrap());
    let union = to_cnf(&parse_cfg(UNEQUAL_UNION, &ab).unwrap());
    let Model::Pda(pda) = q5_pda() else { unreachable!() };
    let machine = pda_to_cnf(&pda).unwrap();

    let mut group = c.benchmark_group("bounded_enumeration");
    group.sample_size(10);
    for bound in [10, 13, 15] {
        for parallel in [false, true] {
            let label = if parallel { "parallel" } else { "sequential" };
            let opts = BoundedOptions {
                parallel,
                ..BoundedOptions::with_bound(bound)
            };
            group.bench_with_input(BenchmarkId::new(format!("cfg/{label}"), bound), &opts, |b, opts| {
                b.iter(|| compare_bounded(&cancel, &union, opts).unwrap())
            });
            group.bench_with_input(BenchmarkId::new(format!("pda/{label}"), bound), &opts, |b, opts| {
                b.iter(|| compare_bounded(&machine, &machine, opts).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bounded_enumeration);
criterion_main!(benches);
