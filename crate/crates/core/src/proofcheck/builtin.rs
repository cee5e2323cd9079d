//! The built-in proof script: the full case analysis for total weight 15.

use super::script::{
    ChainStep, ClaimKind, ClaimSpec, ClassSpec, Distance, Placement, PrintedPhi, PrintedValue,
    ProofScript, Radius, Sym,
};
use crate::arrangements::Composition;
use crate::bounds::Weight;

const P: Radius = Radius::Symbol(Sym::P);
const OP: Radius = Radius::Symbol(Sym::OnePlusP);
const OQ: Radius = Radius::Symbol(Sym::OnePlusQ);

fn v(x: f64) -> Radius {
    Radius::Value(x)
}

fn ones(n: u32) -> ClassSpec {
    ClassSpec::new("one", Weight::One, P, OP, n)
}

fn ones_in(lo: Radius, hi: Radius, n: u32) -> ClassSpec {
    ClassSpec::new("one", Weight::One, lo, hi, n)
}

fn halves(n: u32) -> ClassSpec {
    ClassSpec::new("half", Weight::Half, v(1.0), OP, n)
}

fn halves_from(lo: f64, n: u32) -> ClassSpec {
    ClassSpec::new("half", Weight::Half, v(lo), OP, n)
}

fn halves_to(label: &str, hi: f64, n: u32) -> ClassSpec {
    ClassSpec::new(label, Weight::Half, v(1.0), v(hi), n)
}

fn comps(list: &[[u32; 3]]) -> Vec<Composition> {
    list.iter().copied().map(Composition::from).collect()
}

fn phi(
    printed_as: &str,
    d: Distance,
    r: Radius,
    big_r: Radius,
    printed: PrintedValue,
) -> PrintedPhi {
    PrintedPhi {
        printed_as: printed_as.to_string(),
        d,
        r,
        big_r,
        printed,
        used_in_sum: None,
        note: None,
    }
}

fn phi_p(r: Radius, big_r: Radius, value: f64) -> PrintedPhi {
    phi(
        &format!("Φ_p({r},{big_r})"),
        Distance::P,
        r,
        big_r,
        PrintedValue::approx(value),
    )
}

fn phi_q(r: Radius, big_r: Radius, value: f64) -> PrintedPhi {
    phi(
        &format!("Φ_q({r},{big_r})"),
        Distance::Q,
        r,
        big_r,
        PrintedValue::approx(value),
    )
}

fn with_note(mut e: PrintedPhi, note: &str) -> PrintedPhi {
    e.note = Some(note.to_string());
    e
}

fn lower(mut e: PrintedPhi) -> PrintedPhi {
    e.printed = PrintedValue::lower(e.printed.value);
    e
}

/// `Φ_p(p,1+p)`, quoted in nearly every two-class fact.
fn phi_11() -> PrintedPhi {
    phi_p(P, OP, 31.25)
}

/// The outer weight-1 bound quoted as `Φ_p(p,x)`, which is evaluated on the
/// stated annulus `[x, 1+p]`.
fn phi_11_outer(x: f64) -> PrintedPhi {
    with_note(
        phi(
            &format!("Φ_p(p,{x})"),
            Distance::P,
            v(x),
            OP,
            PrintedValue::approx(34.008),
        ),
        &format!("weight-1 points lie in [{x}, 1+p]; evaluated as Φ_p({x},1+p)"),
    )
}

fn claim(id: &str, kind: ClaimKind, statement: &str, classes: Vec<ClassSpec>) -> ClaimSpec {
    ClaimSpec {
        id: id.to_string(),
        kind,
        statement: statement.to_string(),
        classes,
        steps: Vec::new(),
        expected_margin: None,
        printed_compositions: Vec::new(),
        printed_phi: Vec::new(),
        note: None,
    }
}

fn noted(mut c: ClaimSpec, note: &str) -> ClaimSpec {
    c.note = Some(note.to_string());
    c
}

fn capacity(
    id: &str,
    statement: &str,
    class: ClassSpec,
    margin: PrintedValue,
    phis: Vec<PrintedPhi>,
) -> ClaimSpec {
    ClaimSpec {
        expected_margin: Some(margin),
        printed_phi: phis,
        ..claim(id, ClaimKind::Capacity, statement, vec![class])
    }
}

fn arrangement(
    id: &str,
    statement: &str,
    classes: Vec<ClassSpec>,
    margin: PrintedValue,
    compositions: &[[u32; 3]],
    phis: Vec<PrintedPhi>,
) -> ClaimSpec {
    ClaimSpec {
        expected_margin: Some(margin),
        printed_compositions: comps(compositions),
        printed_phi: phis,
        ..claim(id, ClaimKind::Arrangement, statement, classes)
    }
}

fn chain(id: &str, m: u32, h: u32, steps: Vec<ChainStep>) -> ClaimSpec {
    let mut classes = Vec::new();
    if m > 0 {
        classes.push(ones(m));
    }
    if h > 0 {
        classes.push(halves(h));
    }
    let statement =
        format!("No {m} weight-1 points in [p, 1+p] with {h} weight-1/2 points in [1, 1+p]");
    ClaimSpec {
        steps,
        ..claim(id, ClaimKind::Chain, &statement, classes)
    }
}

/// Fewer than `n` halves in `[x, 1+p]`, so the rest are in `[1, x]`.
fn halves_inward(just: &str, x: f64, n: u32, derived: u32) -> ChainStep {
    ChainStep {
        justification: just.to_string(),
        assumption: format!("at least {n} weight-1/2 points in [{x}, 1+p]"),
        region: Some(Placement::new(Weight::Half, v(x), OP, n)),
        derived: Some(Placement::new(Weight::Half, v(1.0), v(x), derived)),
    }
}

/// Fewer than `n` halves in `[1, x]`, so the rest are in `[x, 1+p]`.
fn halves_outward(just: &str, x: f64, n: u32, derived: u32) -> ChainStep {
    ChainStep {
        justification: just.to_string(),
        assumption: format!("at least {n} weight-1/2 points in [1, {x}]"),
        region: Some(Placement::new(Weight::Half, v(1.0), v(x), n)),
        derived: Some(Placement::new(Weight::Half, v(x), OP, derived)),
    }
}

/// No weight-1 point in `[p, x]`, so all of them are in `[x, 1+p]`.
fn ones_outward(just: &str, x: f64, derived: u32) -> ChainStep {
    ChainStep {
        justification: just.to_string(),
        assumption: format!("at least 1 weight-1 point in [p, {x}]"),
        region: Some(Placement::new(Weight::One, P, v(x), 1)),
        derived: Some(Placement::new(Weight::One, v(x), OP, derived)),
    }
}

/// Fewer than `n` weight-1 points in `[x, 1+p]`, so the rest are in `[p, x]`.
fn ones_inward(just: &str, x: f64, n: u32, derived: u32) -> ChainStep {
    ChainStep {
        justification: just.to_string(),
        assumption: format!("at least {n} weight-1 points in [{x}, 1+p]"),
        region: Some(Placement::new(Weight::One, v(x), OP, n)),
        derived: Some(Placement::new(Weight::One, P, v(x), derived)),
    }
}

fn leaf(just: &str) -> ChainStep {
    ChainStep {
        justification: just.to_string(),
        assumption: "the configuration established so far".to_string(),
        region: None,
        derived: None,
    }
}

/// The complete case analysis at symbolic `p`.
pub fn builtin_paper_script() -> ProofScript {
    let lo = PrintedValue::lower;
    let ap = PrintedValue::approx;
    let mut c = Vec::new();

    // 12 + 0
    c.push(capacity(
        "lemma-3.1",
        "No 12 weight-1 points in [p, 1+p]",
        ones(12),
        lo(15.0),
        vec![lower(phi_11())],
    ));

    // 0 + 27
    c.push(capacity(
        "lemma-3.2.inner",
        "No 11 weight-1/2 points in [1, 1.25]",
        halves_to("half", 1.25, 11),
        lo(2.0),
        vec![phi_q(v(1.0), v(1.25), 32.98)],
    ));
    c.push(capacity(
        "lemma-3.2.outer",
        "No 17 weight-1/2 points in [1.25, 1+p]",
        halves_from(1.25, 17),
        lo(2.0),
        vec![phi_q(v(1.25), OQ, 21.31)],
    ));
    c.push(chain(
        "lemma-3.2",
        0,
        27,
        vec![
            halves_inward("lemma-3.2.outer", 1.25, 17, 11),
            leaf("lemma-3.2.inner"),
        ],
    ));

    // 2 + 24
    c.push(arrangement(
        "fact-3.4.1",
        "No 2 weight-1 points in [p, 1+p] with 13 weight-1/2 points in [1.32, 1+p]",
        vec![ones(2), halves_from(1.32, 13)],
        lo(2.0),
        &[[0, 11, 4], [1, 12, 2]],
        vec![
            phi_11(),
            phi_q(v(1.32), OQ, 22.77),
            phi_p(v(1.32), OP, 29.03),
        ],
    ));
    c.push(capacity(
        "lemma-3.3.cap",
        "No 12 weight-1/2 points in [1, 1.32]",
        halves_to("half", 1.32, 12),
        lo(14.0),
        vec![phi_q(v(1.0), v(1.32), 31.18)],
    ));
    c.push(chain(
        "lemma-3.3",
        2,
        24,
        vec![
            halves_inward("fact-3.4.1", 1.32, 13, 12),
            leaf("lemma-3.3.cap"),
        ],
    ));

    // 4 + 21
    c.push(arrangement(
        "fact-3.6.1",
        "No 4 weight-1 points in [p, 1+p] with 11 weight-1/2 points in [1.25, 1+p]",
        vec![ones(4), halves_from(1.25, 11)],
        lo(0.23),
        &[[0, 7, 8], [1, 8, 6], [2, 9, 4], [3, 10, 2]],
        vec![
            phi_11(),
            phi_q(v(1.25), OQ, 21.31),
            phi_p(v(1.25), OP, 26.69),
        ],
    ));
    c.push(chain(
        "lemma-3.4",
        4,
        21,
        vec![
            halves_inward("fact-3.6.1", 1.25, 11, 11),
            leaf("lemma-3.2.inner"),
        ],
    ));

    // 5 + 20
    c.push(arrangement(
        "fact-3.7.1",
        "No 5 weight-1 points in [p, 1+p] with 10 weight-1/2 points in [1.23, 1+p]",
        vec![ones(5), halves_from(1.23, 10)],
        lo(2.85),
        &[[0, 5, 10], [1, 6, 8], [2, 7, 6], [3, 8, 4], [4, 9, 2]],
        vec![
            phi_11(),
            phi_q(v(1.23), OQ, 20.77),
            phi_p(v(1.23), OP, 25.90),
        ],
    ));
    c.push(capacity(
        "lemma-3.5.cap",
        "No 11 weight-1/2 points in [1, 1.23]",
        halves_to("half", 1.23, 11),
        lo(8.0),
        vec![phi_q(v(1.0), v(1.23), 33.53)],
    ));
    c.push(chain(
        "lemma-3.5",
        5,
        20,
        vec![
            halves_inward("fact-3.7.1", 1.23, 10, 11),
            leaf("lemma-3.5.cap"),
        ],
    ));

    // 6 + 18
    let mut typo = phi_q(v(1.259), OQ, 21.59);
    typo.used_in_sum = Some(21.53);
    typo.note = Some("quoted as 21.59 but summed as 21.53".to_string());
    c.push(arrangement(
        "fact-4.1",
        "No 6 weight-1 points in [p, 1+p] with 8 weight-1/2 points in [1.259, 1+p]",
        vec![ones(6), halves_from(1.259, 8)],
        lo(1.09),
        &[
            [0, 2, 12],
            [1, 3, 10],
            [2, 4, 8],
            [3, 5, 6],
            [4, 6, 4],
            [5, 7, 2],
        ],
        vec![phi_11(), typo, phi_p(v(1.259), OP, 27.03)],
    ));
    c.push(capacity(
        "fact-4.2",
        "No 11 weight-1/2 points in [1, 1.259]",
        halves_to("half", 1.259, 11),
        ap(0.16),
        vec![phi_q(v(1.0), v(1.259), 32.74)],
    ));
    c.push(chain(
        "lemma-4.3",
        6,
        18,
        vec![halves_inward("fact-4.1", 1.259, 8, 11), leaf("fact-4.2")],
    ));

    // 7 + 16
    c.push(arrangement(
        "fact-5.1",
        "No 7 weight-1 points in [p, 1+p] with 8 weight-1/2 points in [1.2, 1+p]",
        vec![ones(7), halves_from(1.2, 8)],
        lo(3.83),
        &[
            [0, 1, 14],
            [1, 2, 12],
            [2, 3, 10],
            [3, 4, 8],
            [4, 5, 6],
            [5, 6, 4],
            [6, 7, 2],
        ],
        vec![phi_11(), phi_q(v(1.2), OQ, 19.85), phi_p(v(1.2), OP, 24.57)],
    ));
    c.push(arrangement(
        "fact-5.2",
        "No 11 weight-1/2 points in [1, 1.33] with 9 of them in [1, 1.2]",
        vec![halves_to("red", 1.2, 9), halves_to("blue", 1.33, 2)],
        ap(4.606),
        &[],
        vec![],
    ));
    c.push(arrangement(
        "fact-5.3",
        "No 7 weight-1 points in [p, 1+p] with 6 weight-1/2 points in [1.33, 1+p]",
        vec![ones(7), halves_from(1.33, 6)],
        lo(0.79),
        &[
            [1, 0, 12],
            [2, 1, 10],
            [3, 2, 8],
            [4, 3, 6],
            [5, 4, 4],
            [6, 5, 2],
        ],
        vec![
            phi_11(),
            phi_q(v(1.33), OQ, 22.93),
            phi_p(v(1.33), OP, 29.32),
        ],
    ));
    c.push(chain(
        "lemma-5.4",
        7,
        16,
        vec![
            halves_inward("fact-5.1", 1.2, 8, 9),
            halves_outward("fact-5.2", 1.33, 11, 6),
            leaf("fact-5.3"),
        ],
    ));

    // 8 + 14
    c.push(arrangement(
        "fact-6.1",
        "No 8 weight-1 points in [p, 1+p] with 6 weight-1/2 points in [1.21, 1+p]",
        vec![ones(8), halves_from(1.21, 6)],
        lo(2.86),
        &[
            [2, 0, 12],
            [3, 1, 10],
            [4, 2, 8],
            [5, 3, 6],
            [6, 4, 4],
            [7, 5, 2],
        ],
        vec![
            phi_11(),
            phi_q(v(1.21), OQ, 20.17),
            phi_p(v(1.21), OP, 25.03),
        ],
    ));
    c.push(arrangement(
        "fact-6.2",
        "No weight-1 point in [p, 1.88] with 9 weight-1/2 points in [1, 1.21]",
        vec![ones_in(P, v(1.88), 1), halves_to("half", 1.21, 9)],
        lo(0.82),
        &[],
        vec![phi_q(v(1.0), v(1.21), 34.10), phi_p(v(1.0), v(1.88), 44.01)],
    ));
    c.push(arrangement(
        "fact-6.3",
        "No 8 weight-1 points in [1.88, 1+p] with 4 weight-1/2 points in [1.29, 1+p]",
        vec![ones_in(v(1.88), OP, 8), halves_from(1.29, 4)],
        lo(0.88),
        &[[4, 0, 8], [5, 1, 6], [6, 2, 4], [7, 3, 2]],
        vec![
            phi_11_outer(1.88),
            phi_q(v(1.29), OQ, 22.21),
            phi_p(v(1.29), OP, 28.11),
        ],
    ));
    c.push(arrangement(
        "fact-6.4",
        "No 11 weight-1/2 points in [1, 1.29] with 9 of them in [1, 1.21]",
        vec![halves_to("red", 1.21, 9), halves_to("blue", 1.29, 2)],
        ap(6.49),
        &[],
        vec![],
    ));
    c.push(chain(
        "lemma-6.5",
        8,
        14,
        vec![
            halves_inward("fact-6.1", 1.21, 6, 9),
            ones_outward("fact-6.2", 1.88, 8),
            halves_inward("fact-6.3", 1.29, 4, 11),
            leaf("fact-6.4"),
        ],
    ));

    // 9 + 12
    c.push(noted(
        arrangement(
            "fact-7.1",
            "No 9 weight-1 points in [p, 1+p] with 4 weight-1/2 points in [1.22, 1+p]",
            vec![ones(9), halves_from(1.22, 4)],
            lo(2.01),
            &[[5, 0, 8], [6, 1, 6], [7, 2, 4], [8, 3, 2]],
            vec![
                phi_11(),
                phi_q(v(1.22), OQ, 20.48),
                phi_p(v(1.22), OP, 25.47),
            ],
        ),
        "the total is printed as 362.01, but its own summands 5·31.25 + 8·25.47 give 360.01",
    ));
    c.push(arrangement(
        "fact-7.2",
        "No weight-1 point in [p, 1.85] with 9 weight-1/2 points in [1, 1.22]",
        vec![ones_in(P, v(1.85), 1), halves_to("half", 1.22, 9)],
        lo(0.08),
        &[],
        vec![phi_q(v(1.0), v(1.22), 33.82), phi_p(v(1.0), v(1.85), 44.76)],
    ));
    c.push(arrangement(
        "fact-7.3",
        "No 9 weight-1 points in [1.85, 1+p] with 2 weight-1/2 points in [1.45, 1+p]",
        vec![ones_in(v(1.85), OP, 9), halves_from(1.45, 2)],
        lo(0.07),
        &[[7, 0, 4], [8, 1, 2]],
        vec![
            phi_11_outer(1.85),
            phi_q(v(1.45), OQ, 23.95),
            phi_p(v(1.45), OP, 32.06),
        ],
    ));
    c.push(arrangement(
        "fact-7.4",
        "No 9 weight-1 points in [1.85, 1+p] with 3 weight-1/2 points in [1.24, 1+p]",
        vec![ones_in(v(1.85), OP, 9), halves_from(1.24, 3)],
        lo(1.8),
        &[[6, 0, 6], [7, 1, 4], [8, 2, 2]],
        vec![
            phi_11_outer(1.85),
            phi_q(v(1.24), OQ, 21.05),
            phi_p(v(1.24), OP, 26.30),
        ],
    ));
    c.push(arrangement(
        "fact-7.5",
        "No 9 weight-1 points in [1.85, 1+p] with 4 weight-1/2 points in [1.19, 1+p]",
        vec![ones_in(v(1.85), OP, 9), halves_from(1.19, 4)],
        lo(2.0),
        &[[5, 0, 8], [6, 1, 6], [7, 2, 4], [8, 3, 2]],
        vec![
            phi_11_outer(1.85),
            phi_q(v(1.19), OQ, 19.50),
            phi_p(v(1.19), OP, 24.08),
        ],
    ));
    c.push(arrangement(
        "fact-7.6",
        "No 11 weight-1/2 points in [1, 1.45] with 10 of them in [1, 1.24] and 9 in [1, 1.19]",
        vec![
            halves_to("red", 1.19, 9),
            halves_to("blue-1.24", 1.24, 1),
            halves_to("blue-1.45", 1.45, 1),
        ],
        lo(1.2),
        &[],
        vec![
            lower(phi_q(v(1.0), v(1.19), 34.6)),
            lower(phi_q(v(1.0), v(1.24), 33.2)),
            lower(phi_q(v(1.0), v(1.45), 26.3)),
        ],
    ));
    c.push(chain(
        "lemma-7.7",
        9,
        12,
        vec![
            halves_inward("fact-7.1", 1.22, 4, 9),
            ones_outward("fact-7.2", 1.85, 9),
            halves_inward("fact-7.3", 1.45, 2, 11),
            halves_inward("fact-7.4", 1.24, 3, 10),
            halves_inward("fact-7.5", 1.19, 4, 9),
            leaf("fact-7.6"),
        ],
    ));

    // 10 + 10
    c.push(arrangement(
        "fact-8.1",
        "No 10 weight-1 points in [p, 1+p] with 2 weight-1/2 points in [1.2931, 1+p]",
        vec![ones(10), halves_from(1.2931, 2)],
        ap(0.0015),
        &[[8, 0, 4], [9, 1, 2]],
        vec![
            phi_p(P, OP, 31.2555),
            phi_q(v(1.2931), OQ, 22.2806),
            phi_p(v(1.2931), OP, 28.2107),
        ],
    ));
    c.push(arrangement(
        "fact-8.2",
        "No weight-1 point in [p, 1.59] with 9 weight-1/2 points in [1, 1.2931]",
        vec![ones_in(P, v(1.59), 1), halves_to("half", 1.2931, 9)],
        ap(0.0482),
        &[],
        vec![
            phi_q(v(1.0), v(1.2931), 31.8557),
            phi_p(v(1.0), v(1.59), 52.6013),
        ],
    ));
    let sub: [(&str, f64, u32, f64, &[[u32; 3]]); 5] = [
        ("a", 1.2571, 1, 0.0067, &[]),
        ("b", 1.1513, 2, 0.022, &[[8, 0, 4], [9, 1, 2]]),
        ("c", 1.1254, 3, 0.021, &[[7, 0, 6], [8, 1, 4], [9, 2, 2]]),
        (
            "d",
            1.1138,
            4,
            0.036,
            &[[6, 0, 8], [7, 1, 6], [8, 2, 4], [9, 3, 2]],
        ),
        (
            "e",
            1.1072,
            5,
            0.033,
            &[[5, 0, 10], [6, 1, 8], [7, 2, 6], [8, 3, 4], [9, 4, 2]],
        ),
    ];
    for (tag, x, n, margin, list) in sub {
        let fact = arrangement(
            &format!("fact-8.3{tag}"),
            &format!(
                "No 10 weight-1 points in [1.59, 1+p] with {n} weight-1/2 points in [{x}, 1+p]"
            ),
            vec![ones_in(v(1.59), OP, 10), halves_from(x, n)],
            ap(margin),
            list,
            vec![],
        );
        c.push(if tag == "b" {
            noted(
                fact,
                "the sum quotes Φ_q(1.153,1+q); read as Φ_q(1.1513,1+q) from the statement",
            )
        } else {
            fact
        });
    }
    c.push(noted(
        arrangement(
            "lemma-8.3.colored",
            "No 10 weight-1/2 points in [1, 1.2571] with at least 9, 8, 7, 6 of them in \
         [1, 1.1513], [1, 1.1254], [1, 1.1138], [1, 1.1072]",
            vec![
                halves_to("red", 1.1072, 6),
                halves_to("blue-1.1138", 1.1138, 1),
                halves_to("blue-1.1254", 1.1254, 1),
                halves_to("blue-1.1513", 1.1513, 1),
                halves_to("blue-1.2571", 1.2571, 1),
            ],
            ap(0.0047),
            &[],
            vec![],
        ),
        "the sum quotes Φ_q(1,1.072) and Φ_q(1,1153); read as 1.1072 and 1.1513",
    ));
    c.push(noted(
        chain(
            "lemma-8.3",
            10,
            10,
            vec![
                halves_inward("fact-8.1", 1.2931, 2, 9),
                ones_outward("fact-8.2", 1.59, 10),
                halves_inward("fact-8.3a", 1.2571, 1, 10),
                halves_inward("fact-8.3b", 1.1513, 2, 9),
                halves_inward("fact-8.3c", 1.1254, 3, 8),
                halves_inward("fact-8.3d", 1.1138, 4, 7),
                halves_inward("fact-8.3e", 1.1072, 5, 6),
                leaf("lemma-8.3.colored"),
            ],
        ),
        "the proof places all halves in [1, 1.12571]; read as [1, 1.2571] from fact-8.3a",
    ));

    // 11 + 8
    c.push(arrangement(
        "fact-9.1a",
        "No 11 weight-1 points in [p, 1+p] with a weight-1/2 point in [1.2, 1+p]",
        vec![ones(11), halves_from(1.2, 1)],
        lo(1.64),
        &[],
        vec![lower(phi_11()), lower(phi_p(v(1.2), OP, 24.57))],
    ));
    c.push(arrangement(
        "fact-9.1b",
        "No 11 weight-1 points in [p, 1+p] with 2 weight-1/2 points in [1.12, 1+p]",
        vec![ones(11), halves_from(1.12, 2)],
        ap(1.09),
        &[[9, 0, 4], [10, 1, 2]],
        vec![
            phi_11(),
            phi_q(v(1.12), OQ, 16.40),
            phi_p(v(1.12), OP, 19.94),
        ],
    ));
    c.push(capacity(
        "fact-9.2",
        "No 11 weight-1 points in [1.5, 1+p]",
        ones_in(v(1.5), OP, 11),
        ap(1.88),
        vec![],
    ));
    c.push(noted(arrangement(
        "fact-9.3",
        "No weight-1 point in [p, 1.5] with 8 weight-1/2 points in [1, 1.2], 7 of them in [1, 1.12]",
        vec![
            ones_in(P, v(1.5), 1),
            halves_to("red", 1.12, 7),
            halves_to("blue", 1.2, 1),
        ],
        ap(5.72),
        &[],
        vec![],
    ), "the quoted sum 5Φ_q(1,1.12) + 2Φ_p(1,1.5) + 2Φ_q(1,1.2) evaluates to 365.57, not 365.72"));
    c.push(chain(
        "lemma-9.4",
        11,
        8,
        vec![
            halves_inward("fact-9.1a", 1.2, 1, 8),
            halves_inward("fact-9.1b", 1.12, 2, 7),
            ones_inward("fact-9.2", 1.5, 11, 1),
            leaf("fact-9.3"),
        ],
    ));

    ProofScript::new(c)
}
