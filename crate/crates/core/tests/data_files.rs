use std::path::PathBuf;

use tql_core::zoo::load_group;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

#[test]
fn shipped_files_match_declared_orders() {
    for (file, order, degree) in [
        ("m12.gens", 95040u64, 12usize),
        ("j1.gens", 175560, 266),
        ("j2.gens", 604800, 100),
        ("sp4_4.gens", 979200, 85),
    ] {
        let t = std::time::Instant::now();
        let g = load_group(&data(file)).unwrap();
        assert_eq!((g.order(), g.degree()), (order, degree), "{file}");
        assert!(g.metadata().aut_order.is_some());
        eprintln!("{file}: {:?}", t.elapsed());
    }
}
