//! The bracket against a brute-force state sum and known values.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::SeedableRng;
use threepage::fixtures::{unlink, HOPF, TREFOIL};
use threepage::pages::{to_link_diagram, LinkDiagram};
use threepage::random::closed_word;
use threepage::surface::kauffman_bracket;
use threepage::word::parse_word;

/// Laurent polynomial in `A` as exponent -> coefficient.
type Poly = BTreeMap<i64, i64>;

fn mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for (e, c) in p {
        for (f, d) in q {
            *out.entry(e + f).or_default() += c * d;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn poly(terms: &[(i64, i64)]) -> Poly {
    let mut p = Poly::new();
    for &(c, e) in terms {
        *p.entry(e).or_default() += c;
    }
    p.retain(|_, c| *c != 0);
    p
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// Sum over all 2^n smoothings of A^(#A - #B) d^(loops - 1), d = -A^2 - A^-2.
/// The A-smoothing of a crossing with ends (i, j, k, l), counterclockwise
/// from the incoming under-strand, joins i with j and k with l.
fn state_sum(d: &LinkDiagram) -> Poly {
    let n = d.crossings.len();
    let m = d.edge_count();
    let loop_value = poly(&[(-1, 2), (-1, -2)]);
    let mut total = Poly::new();
    for state in 0u64..(1 << n) {
        let mut parent: Vec<usize> = (0..m).collect();
        let join = |p: usize, q: usize, parent: &mut Vec<usize>| {
            let (a, b) = (find(parent, p), find(parent, q));
            parent[a] = b;
        };
        let mut a_count = 0i64;
        for (k, x) in d.crossings.iter().enumerate() {
            let [i, j, kk, l] = x.ends;
            if state >> k & 1 == 0 {
                a_count += 1;
                join(i, j, &mut parent);
                join(kk, l, &mut parent);
            } else {
                join(i, l, &mut parent);
                join(j, kk, &mut parent);
            }
        }
        let loops = (0..m).filter(|&e| find(&mut parent, e) == e).count();
        let mut term = poly(&[(1, 2 * a_count - n as i64)]);
        for _ in 1..loops {
            term = mul(&term, &loop_value);
        }
        for (e, c) in term {
            *total.entry(e).or_default() += c;
        }
    }
    total.retain(|_, c| *c != 0);
    total
}

fn bracket(d: &LinkDiagram) -> Poly {
    let b = kauffman_bracket(d).expect("under the cap");
    b.terms().map(|(e, c)| (e, c.to_string().parse::<i64>().unwrap())).collect()
}

#[test]
fn known_values() {
    let t = to_link_diagram(&parse_word(TREFOIL).unwrap()).unwrap();
    // the left-handed trefoil
    assert_eq!(state_sum(&t), poly(&[(-1, 5), (-1, -3), (1, -7)]));
    let h = to_link_diagram(&parse_word(HOPF).unwrap()).unwrap();
    assert_eq!(state_sum(&h), poly(&[(-1, 4), (-1, -4)]));
    let u = to_link_diagram(&unlink(3)).unwrap();
    assert_eq!(state_sum(&u), mul(&poly(&[(-1, 2), (-1, -2)]), &poly(&[(-1, 2), (-1, -2)])));
}

#[test]
fn fixtures_match_the_state_sum() {
    let mut words = vec![parse_word(TREFOIL).unwrap(), parse_word(HOPF).unwrap()];
    words.extend((1..=4).map(unlink));
    for w in words {
        let d = to_link_diagram(&w).unwrap();
        assert_eq!(bracket(&d), state_sum(&d), "{w}");
    }
}

#[test]
fn random_diagrams_up_to_eight_crossings() {
    let mut rng = StdRng::seed_from_u64(11);
    let mut checked = 0;
    let mut by_size = [0usize; 9];
    while checked < 300 {
        let w = closed_word(&mut rng, 4 + checked % 14, false);
        let d = to_link_diagram(&w).unwrap();
        if d.crossing_count() > 8 {
            continue;
        }
        assert_eq!(bracket(&d), state_sum(&d), "{w}");
        by_size[d.crossing_count()] += 1;
        checked += 1;
    }
    assert!(by_size[5..].iter().sum::<usize>() > 20, "{by_size:?}");
}
