mod common;

#[test]
fn coding_laws_on_a_random_pool() {
    let pool = common::pool(1000, knowtruth::DEFAULT_SEED);
    let fails = common::coding_failures(&pool);
    assert!(fails.is_empty(), "{} failures, first: {}", fails.len(), fails[0]);
}
