//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use klcells::cells::{brute_force_cell, cell_elements, in_z, in_z_by_recording, rim_diagrams, rim_y, special_rim};
use klcells::families::{rim_hook, rim_partition, rim_reversed_partition, rim_two_ones_two, classify, Family};
use klcells::lifting::{theta_k, theta_k_connector, theta_star, StarExtension, StarKind};
use klcells::rs::{is_admissible, rs_inverse, rs_pair, subsequence_type, subsequence_type_oracle};
use klcells::verify::verify;
use klcells::{Composition, Diagram, Node, Permutation};

/// Collects mismatches for one criterion.
#[derive(Default)]
struct Tally {
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, label: &str, got: T, want: T) {
        let ok = got == want;
        self.check(ok, || format!("{label}: got {got:?}, want {want:?}"));
    }
}

fn c(s: &str) -> Composition {
    s.parse().expect("composition")
}

fn p(s: &str) -> Permutation {
    s.parse().expect("permutation")
}

fn cyc(n: usize, s: &str) -> Permutation {
    Permutation::parse(s, Some(n)).expect("cycle form")
}

fn set(perms: impl IntoIterator<Item = Permutation>) -> BTreeSet<Permutation> {
    perms.into_iter().collect()
}

fn rows(list: &[&str]) -> BTreeSet<Permutation> {
    set(list.iter().map(|s| p(s)))
}

/// A diagram given row by row as lists of occupied columns.
fn grid(layout: &[&[usize]]) -> Diagram {
    let nodes = layout.iter().enumerate().flat_map(|(r, cols)| cols.iter().map(move |&col| (r + 1, col)));
    Diagram::new(nodes).expect("principal diagram")
}

fn distinguished(lambda: &Composition) -> Vec<Permutation> {
    let n = lambda.size();
    (1..=n)
        .permutations(n)
        .map(|row| Permutation::from_row(row).unwrap())
        .filter(|e| e.is_distinguished(lambda).unwrap())
        .collect()
}

/// Rim listing, canonical diagrams in listing order, and special rim indices.
fn rim_golden(t: &mut Tally, lambda: &str, listing: &[&str], table: &[Diagram], special: &[usize]) {
    let lambda = c(lambda);
    let y: Vec<Permutation> = listing.iter().map(|s| p(s)).collect();
    t.eq(&format!("Y({lambda})"), set(rim_y(&lambda)), set(y.clone()));
    if !table.is_empty() {
        for (i, (yi, e)) in y.iter().zip(table).enumerate() {
            t.eq(&format!("D(y_{}, {lambda})", i + 1), Diagram::canonical(yi, &lambda).ok(), Some(e.clone()));
        }
        let got: BTreeSet<Diagram> = rim_diagrams(&lambda).unwrap().into_iter().collect();
        t.eq(&format!("E({lambda})"), got, table.iter().cloned().collect());
    }
    let ys = set(special.iter().map(|&i| y[i - 1].clone()));
    t.eq(&format!("Ys({lambda})"), set(special_rim(&lambda)), ys);
}

fn worked_examples() -> Tally {
    let mut t = Tally::default();

    // Y(λ) and Y(λ_*) for λ = (1,2,1,2)
    let lambda = c("1,2,1,2");
    t.eq("Y(1,2,1,2)", set(rim_y(&lambda)), rows(&["[3,1,4,5,2,6]", "[1,2,5,3,4,6]"]));
    let star = rows(&["[1,2,6,3,4,7,5]", "[3,1,4,5,2,6,7]", "[2,1,3,4,5,7,6]"]);
    t.eq("Y(1,2,1,2,1)", set(rim_y(&c("1,2,1,2,1"))), star);

    rim_golden(
        &mut t,
        "1,2,2,1",
        &["[1,2,5,3,6,4]", "[3,1,4,2,5,6]", "[2,1,3,4,6,5]"],
        &[
            grid(&[&[1], &[1, 2], &[1, 2], &[1]]),
            grid(&[&[2], &[1, 2], &[1, 2], &[2]]),
            grid(&[&[2], &[1, 2], &[2, 3], &[2]]),
        ],
        &[1, 2],
    );
    rim_golden(
        &mut t,
        "1,3,2,1",
        &["[1,2,5,7,3,6,4]", "[3,1,4,7,2,5,6]", "[2,1,3,7,4,6,5]", "[4,1,3,5,2,6,7]", "[3,1,2,4,5,7,6]"],
        &[
            grid(&[&[1], &[1, 2, 3], &[1, 2], &[1]]),
            grid(&[&[2], &[1, 2, 3], &[1, 2], &[2]]),
            grid(&[&[2], &[1, 2, 4], &[2, 3], &[2]]),
            grid(&[&[3], &[1, 2, 3], &[1, 3], &[3]]),
            grid(&[&[3], &[1, 2, 3], &[3, 4], &[3]]),
        ],
        &[1, 2, 4],
    );
    rim_golden(
        &mut t,
        "1,2,3,1",
        &["[4,2,5,1,3,6,7]", "[2,3,6,1,4,7,5]", "[3,2,4,1,5,7,6]", "[1,2,6,3,5,7,4]", "[2,1,3,4,6,7,5]"],
        &[
            grid(&[&[3], &[2, 3], &[1, 2, 3], &[3]]),
            grid(&[&[2], &[2, 3], &[1, 2, 3], &[2]]),
            grid(&[&[3], &[2, 3], &[1, 3, 4], &[3]]),
            grid(&[&[1], &[1, 3], &[1, 2, 3], &[1]]),
            grid(&[&[2], &[1, 2], &[2, 3, 4], &[2]]),
        ],
        &[1, 2, 4],
    );

    let e2112 = [
        grid(&[&[1, 2], &[1], &[1], &[1, 2]]),
        grid(&[&[1, 2], &[2], &[2], &[1, 2]]),
        grid(&[&[1, 2], &[1], &[2], &[1, 2]]),
    ];
    let e3112 = [
        grid(&[&[1, 2, 3], &[1], &[1], &[1, 2]]),
        grid(&[&[1, 2, 3], &[2], &[2], &[1, 2]]),
        grid(&[&[1, 2, 3], &[1], &[2], &[1, 2]]),
    ];
    let e2113 = [
        grid(&[&[2, 3], &[3], &[3], &[1, 2, 3]]),
        grid(&[&[2, 3], &[2], &[3], &[1, 2, 3]]),
        grid(&[&[2, 3], &[2], &[2], &[1, 2, 3]]),
    ];
    let y2112 = ["[1,5,2,3,4,6]", "[1,3,4,5,2,6]", "[1,4,2,5,3,6]"];
    let y3112 = ["[1,5,7,2,3,4,6]", "[1,3,7,4,5,2,6]", "[1,4,7,2,5,3,6]"];
    rim_golden(&mut t, "2,1,1,2", &y2112, &e2112, &[1, 2]);
    rim_golden(&mut t, "3,1,1,2", &y3112, &e3112, &[1, 2]);
    rim_golden(&mut t, "2,1,1,3", &["[2,4,5,6,1,3,7]", "[2,5,3,6,1,4,7]", "[2,6,3,4,1,5,7]"], &[], &[1, 3]);
    let got: BTreeSet<Diagram> = rim_diagrams(&c("2,1,1,3")).unwrap().into_iter().collect();
    t.eq("E(2,1,1,3)", got.clone(), e2113.iter().cloned().collect());
    t.eq("E(2,1,1,3) by rotation", got, e3112.iter().map(Diagram::rotate180).collect());

    // k = 1 lift from (2,1,1,2) to (3,1,1,2), restricted to the special rims too
    let lambda = c("2,1,1,2");
    let images: Vec<Permutation> = y2112.iter().map(|y| theta_k(&lambda, 1, &p(y)).unwrap()).collect();
    t.eq("k=1 images", images.clone(), y3112.iter().map(|s| p(s)).collect());
    t.eq("k=1 injective", set(images.clone()).len(), 3);
    let special_images = set(special_rim(&lambda).iter().map(|y| theta_k(&lambda, 1, y).unwrap()));
    t.eq("k=1 special images", special_images, set(special_rim(&c("3,1,1,2"))));

    // λ = (2,1,5)
    let lambda = c("2,1,5");
    let y1 = p("[4,6,7,1,2,3,5,8]");
    let y2 = p("[4,7,5,1,2,3,6,8]");
    t.eq("Y(2,1,5)", set(rim_y(&lambda)), set([y1.clone(), y2.clone()]));
    t.eq("θ*(y_1)", theta_star(&lambda, &y1).ok(), Some(y1.embed()));
    let s87 = &Permutation::simple(9, 8).unwrap() * &Permutation::simple(9, 7).unwrap();
    t.eq("θ*(y_2)", theta_star(&lambda, &y2).ok(), Some(&y2.embed() * &s87));
    let d1 = Diagram::canonical(&y1, &lambda).unwrap();
    let ext = StarExtension::new(&d1, StarKind::Node(8)).unwrap();
    t.check(ext.connector().is_identity(), || "connector of y_1 is not the identity".into());
    let y2151 = ["(1,4)(2,6,3,7,5)", "(1,4)(2,8,9,7,6,3,5)", "(1,3,4)(2,8,9,6,5)", "(1,2,8,9,5,4)", "(2,8,9,4,3)"];
    t.eq("Y(2,1,5,1)", set(rim_y(&c("2,1,5,1"))), set(y2151.iter().map(|s| cyc(9, s))));

    // λ = (2,1,2,2)
    let lambda = c("2,1,2,2");
    t.eq("M(2,1,2,2)", lambda.max_positions(), BTreeSet::from([1, 3, 4]));
    let y = rim_y(&lambda);
    let d = theta_k_connector(&lambda, 1).unwrap();
    t.eq("d for k=1", d.clone(), cyc(8, "(8,7,6,5,4,3)"));
    let pulled = set(rim_y(&c("3,1,2,2")).iter().map(|z| &d.inverse() * z));
    t.eq("d⁻¹Y(3,1,2,2)", pulled, set(y.iter().map(Permutation::embed)));
    let lifted3 = set(y.iter().map(|z| theta_k(&lambda, 3, z).unwrap()));
    t.eq("dY(λ) for k=3", lifted3.clone(), set([cyc(8, "(2,4)(3,5,6,8,7)"), cyc(8, "(2,5,6,8,7,4,3)")]));
    t.check(lifted3.is_subset(&set(rim_y(&c("2,1,3,2")))), || "k=3 images outside Y(2,1,3,2)".into());
    let target4 = set(rim_y(&c("2,1,2,3")));
    for z in &y {
        let image = theta_k(&lambda, 4, z).unwrap();
        t.check(!target4.contains(&image), || format!("k=4 image {image} lies in Y(2,1,2,3)"));
    }

    // Diagrams and paths
    let lambda = c("3,3,2,1");
    let d = p("[3,4,7,2,6,8,1,9,5]");
    let dd = Diagram::new([(1, 3), (1, 4), (1, 6), (2, 2), (2, 5), (2, 6), (3, 1), (3, 6), (4, 4)]).unwrap();
    let e = Diagram::new([(1, 3), (1, 4), (1, 7), (2, 2), (2, 6), (2, 8), (3, 1), (3, 8), (4, 5)]).unwrap();
    t.eq("D(d,(3,3,2,1))", Diagram::canonical(&d, &lambda).ok(), Some(dd.clone()));
    t.eq("w_D", dd.w(), d.clone());
    t.eq("w_E", e.w(), d.clone());
    t.eq("e_1 prefix", p("[2,3,4,1,6,7,5,8,9]").is_prefix_of(&d).unwrap(), true);
    t.eq("e_2 prefix", p("[2,5,6,1,4,7,3,8,9]").is_prefix_of(&d).unwrap(), false);
    t.eq("w_J w_D", &Permutation::parabolic_longest(&lambda) * &d, p("[7,4,3,8,6,2,9,1,5]"));
    let bad = grid(&[&[2, 3, 4], &[1, 2], &[3]]);
    t.eq("subsequence type", subsequence_type(&bad).nu().parts().to_vec(), vec![3, 1, 1, 1]);
    t.eq("admissible", is_admissible(&bad), false);
    t.eq("w_D in Z", in_z(&bad.row_composition(), &bad.w()).unwrap(), false);
    t
}

fn oracle_equivalence() -> Tally {
    let mut t = Tally::default();
    for n in 1..=6 {
        for lambda in Composition::all(n) {
            t.eq(&format!("cell({lambda})"), cell_elements(&lambda), brute_force_cell(&lambda).unwrap());
            for e in distinguished(&lambda) {
                let (a, b) = (in_z(&lambda, &e).unwrap(), in_z_by_recording(&lambda, &e).unwrap());
                t.check(a == b, || format!("membership of {e} in Z({lambda}): {a} vs {b}"));
            }
        }
    }
    t
}

fn random_diagram(rng: &mut ChaCha8Rng) -> Diagram {
    let size = rng.gen_range(1..=10);
    let (h, w) = (rng.gen_range(1..=size), rng.gen_range(1..=size));
    let mut cells: Vec<Node> = (1..=h).cartesian_product(1..=w).collect();
    cells.shuffle(rng);
    cells.truncate(size);
    Diagram::normalize_principal(cells).unwrap()
}

fn greene_consistency() -> Tally {
    let mut t = Tally::default();
    let compare = |t: &mut Tally, d: &Diagram| {
        let oracle = subsequence_type_oracle(d).unwrap();
        let fast = subsequence_type(d);
        t.check(fast == oracle, || format!("{d:?}: {fast:?} vs {oracle:?}"));
    };
    for n in 1..=6 {
        for lambda in Composition::all(n) {
            for e in distinguished(&lambda) {
                compare(&mut t, &Diagram::canonical(&e, &lambda).unwrap());
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..500 {
        compare(&mut t, &random_diagram(&mut rng));
    }
    t
}

fn theorem_harness() -> Tally {
    let mut t = Tally::default();
    let report = verify(6, true);
    for check in &report.checks {
        t.check(check.failures == 0, || format!("{}: {:?}", check.name, check.first_failure));
    }
    t
}

fn families() -> Tally {
    let mut t = Tally::default();
    for n in 1..=8 {
        for lambda in Composition::all(n) {
            match classify(&lambda) {
                Some(Family::HookRearrangement) => {
                    let f = rim_hook(&lambda).unwrap();
                    t.eq(&format!("|Y({lambda})|"), f.rim.len(), f.predicted_size);
                    t.check(f.matches_rim_y(), || format!("hook rim of {lambda}"));
                }
                Some(Family::Partition) if n <= 6 => {
                    let f = rim_partition(&lambda.to_partition().unwrap());
                    t.check(f.matches_rim_y(), || format!("partition rim of {lambda}"));
                }
                Some(Family::ReversedPartition) if n <= 6 => {
                    let f = rim_reversed_partition(&lambda).unwrap();
                    t.check(f.matches_rim_y(), || format!("reversed partition rim of {lambda}"));
                }
                _ => {}
            }
        }
    }
    for r in 3..=6 {
        let f = rim_two_ones_two(r).unwrap();
        t.eq(&format!("|Y(2,1^{},2)|", r - 2), f.rim.len(), r - 1);
        t.check(f.matches_rim_y(), || format!("two_ones_two rim for r = {r}"));
    }
    t
}

fn round_trips() -> Tally {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let mut row: Vec<usize> = (1..=8).collect();
        row.shuffle(&mut rng);
        let w = Permutation::from_row(row).unwrap();
        let (pt, qt) = rs_pair(&w);
        t.eq(&format!("RS round trip of {w}"), rs_inverse(&pt, &qt).ok(), Some(w.clone()));
        let word = w.reduced_word();
        t.eq(&format!("reduced word of {w}"), (word.len(), word.product(8).ok()), (w.length(), Some(w.clone())));
    }
    for n in 1..=6 {
        for lambda in Composition::all(n) {
            for e in distinguished(&lambda) {
                let d = Diagram::canonical(&e, &lambda).unwrap();
                t.check(d.w() == e && d.row_composition() == lambda, || format!("D({e}, {lambda})"));
            }
        }
    }
    t
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Tally); 6] = [
        ("worked examples", worked_examples),
        ("oracle equivalence, n <= 6", oracle_equivalence),
        ("Greene consistency", greene_consistency),
        ("theorem harness, n <= 6", theorem_harness),
        ("closed-form families", families),
        ("round trips", round_trips),
    ];
    let mut all_ok = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let tally = run();
        let ok = tally.failures.is_empty();
        all_ok &= ok;
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!(
            "criterion {}: {name} ... {verdict} ({} cases, {} failures, {:.2}s)",
            i + 1,
            tally.cases,
            tally.failures.len(),
            start.elapsed().as_secs_f64()
        );
        for f in tally.failures.iter().take(10) {
            println!("    {f}");
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
