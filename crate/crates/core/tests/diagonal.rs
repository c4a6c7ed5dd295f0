use knowtruth::coding::{decode_formula, gc_formula, quote};
use knowtruth::diagonal::fixed_point;
use knowtruth::kernel::{check_proof, TheoremDb};
use knowtruth::syntax::gen::random_unary;
use knowtruth::syntax::{Formula, Var};
use knowtruth::systems::{builtin_systems, BASE};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn random_fixed_points_check_in_base() {
    let reg = builtin_systems();
    let mut rng = ChaCha8Rng::seed_from_u64(knowtruth::DEFAULT_SEED);
    let y = Var(0);
    for _ in 0..50 {
        let phi = random_unary(&mut rng, 4, y);
        let fp = fixed_point(&phi, y).unwrap_or_else(|e| panic!("{phi}: {e}"));
        assert_eq!(fp.witness.system, BASE);
        let v = check_proof(&reg, &TheoremDb::new(), &fp.witness).unwrap_or_else(|e| panic!("{phi}: {e}"));
        assert_eq!(v.conclusion, fp.statement);
        let want = Formula::iff(fp.theta.clone(), phi.instantiate(y, &quote(&fp.theta)).unwrap());
        assert_eq!(fp.statement, want);
        let (d, z) = fp.diagonal();
        assert_eq!(decode_formula(&gc_formula(&fp.theta).0).as_ref(), Some(&fp.theta));
        assert_eq!(fp.theta, d.instantiate(z, &quote(&d)).unwrap());
    }
}
