use cuspdim::dirichlet::{verify_convolution_identities, MultiplicativeFunction};
use cuspdim::{factorize, ExactRational, Registry};
use proptest::prelude::*;

const MAX_N: u64 = 10_000;
const SAMPLE: [&str; 10] = ["one", "delta", "id", "mu", "tau", "phi", "lambda", "s0", "nu2", "u"];

fn get(name: &str) -> &'static MultiplicativeFunction {
    Registry::standard().get(name).unwrap()
}

fn agree(f: &MultiplicativeFunction, g: &MultiplicativeFunction) -> Option<u64> {
    (1..=MAX_N).find(|&n| f.eval(n).unwrap() != g.eval(n).unwrap())
}

#[test]
fn convolution_is_commutative() {
    for a in SAMPLE {
        for b in SAMPLE {
            let (f, g) = (get(a), get(b));
            assert_eq!(agree(&f.convolve(g), &g.convolve(f)), None, "{a} * {b}");
        }
    }
}

#[test]
fn convolution_is_associative() {
    let triples = [("mu", "tau", "phi"), ("lambda", "s0", "u"), ("id", "nu2", "mu"), ("one", "one", "lambda")];
    for (a, b, c) in triples {
        let (f, g, h) = (get(a), get(b), get(c));
        let left = f.convolve(g).convolve(h);
        let right = f.convolve(&g.convolve(h));
        assert_eq!(agree(&left, &right), None, "({a} * {b}) * {c}");
    }
}

#[test]
fn delta_is_the_identity() {
    for a in SAMPLE {
        assert_eq!(agree(&get(a).convolve(get("delta")), get(a)), None, "{a}");
    }
}

#[test]
fn lambda_inverts_tau() {
    assert_eq!(agree(&get("tau").convolve(get("lambda")), get("delta")), None);
    assert_eq!(agree(&get("mu").convolve(get("mu")), get("lambda")), None);
    assert_eq!(agree(&get("one").convolve(get("mu")), get("delta")), None);
}

#[test]
fn proof_identities_to_ten_thousand() {
    let r = verify_convolution_identities(Registry::standard(), MAX_N).unwrap();
    assert_eq!(r.results.len(), 12);
    for x in &r.results {
        assert_eq!(x.failure_count, 0, "{} fails at {:?}", x.identity, x.failures);
    }
}

#[test]
fn convolution_matches_divisor_sum() {
    let f = get("phi");
    let g = get("nu3");
    let conv = f.convolve(g);
    for n in 1..=2000u64 {
        let direct: ExactRational = factorize(n)
            .unwrap()
            .divisors()
            .into_iter()
            .map(|d| f.eval(d).unwrap() * g.eval(n / d).unwrap())
            .sum();
        assert_eq!(conv.eval(n).unwrap(), direct, "n = {n}");
    }
}

proptest! {
    #[test]
    fn multiplicativity_on_coprime_pairs(a in 1u64..100_000, b in 1u64..100_000, i in 0usize..SAMPLE.len()) {
        prop_assume!(num_integer::gcd(a, b) == 1);
        let f = get(SAMPLE[i]).convolve(get("lambda"));
        prop_assert_eq!(f.eval(a * b).unwrap(), f.eval(a).unwrap() * f.eval(b).unwrap());
    }
}
