//! Reference caustics with closed forms and known winding numbers.

use serde::{Deserialize, Serialize};

use crate::cayley::{closed_form_caustics, Flavor};
use crate::conics::{CausticKind, ConfocalFamily};
use crate::extremal::AkhiezerCase;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Fixture {
    pub id: String,
    pub a: f64,
    pub b: f64,
    pub n: usize,
    pub flavor: Flavor,
    pub lambda0: f64,
    pub kind: CausticKind,
    /// Winding of the closed Cartesian orbit.
    pub winding: (usize, usize),
    /// `(l, case)` for the two-interval Akhiezer comparison, periodic only.
    pub akhiezer: Option<(usize, AkhiezerCase)>,
}

impl Fixture {
    pub fn family(&self) -> ConfocalFamily {
        ConfocalFamily::new(self.a, self.b).expect("fixture family")
    }
}

#[allow(clippy::too_many_arguments)]
fn fx(
    id: &str,
    a: f64,
    b: f64,
    n: usize,
    flavor: Flavor,
    lambda0: f64,
    winding: (usize, usize),
    akhiezer: Option<(usize, AkhiezerCase)>,
) -> Fixture {
    let kind = ConfocalFamily::new(a, b).unwrap().caustic(lambda0).kind;
    Fixture {
        id: id.into(),
        a,
        b,
        n,
        flavor,
        lambda0,
        kind,
        winding,
        akhiezer,
    }
}

/// The fixture table, sorted by id.
pub fn fixtures() -> Vec<Fixture> {
    use AkhiezerCase::{E, H};
    use Flavor::*;
    let r2 = 2f64.sqrt();
    let mut out = vec![
        fx(
            "n3-a2b1",
            2.0,
            1.0,
            3,
            Periodic,
            -6.0 + 4.0 * 3f64.sqrt(),
            (3, 2),
            Some((1, E)),
        ),
        fx("n4-a2b1-e", 2.0, 1.0, 4, Periodic, 2.0 / 3.0, (4, 2), Some((1, E))),
        fx("n4-a3b1-e", 3.0, 1.0, 4, Periodic, 0.75, (4, 2), Some((1, E))),
        fx("n4-a3b1-h", 3.0, 1.0, 4, Periodic, 1.5, (4, 2), Some((1, H))),
        fx(
            "n6-a2b1-e",
            2.0,
            1.0,
            6,
            Periodic,
            2.0 / (r2 + 1.0).powi(2),
            (6, 2),
            Some((1, E)),
        ),
        fx(
            "n6-a2b1-h",
            2.0,
            1.0,
            6,
            Periodic,
            (2.0 + 4.0 * r2) / 7.0,
            (6, 4),
            Some((2, H)),
        ),
        fx(
            "n6-a4.5b1-h",
            4.5,
            1.0,
            6,
            Periodic,
            4.5 / (4.5f64.sqrt() - 1.0).powi(2),
            (6, 2),
            Some((1, H)),
        ),
        fx("e2-a2b1", 2.0, 1.0, 2, EllipticA, 2.0 / 3.0, (4, 2), None),
        fx(
            "e3-a2b1-a",
            2.0,
            1.0,
            3,
            EllipticA,
            2.0 / (r2 + 1.0).powi(2),
            (6, 2),
            None,
        ),
        fx(
            "e3-a2b1-c",
            2.0,
            1.0,
            3,
            EllipticC,
            (2.0 + 4.0 * r2) / 7.0,
            (6, 4),
            None,
        ),
    ];
    let f = ConfocalFamily::new(2.0, 1.0).unwrap();
    for s in closed_form_caustics(&f, 5).expect("quintic caustics") {
        let w = s.winding;
        out.push(fx(
            &format!("n5-a2b1-{}", w.1),
            2.0,
            1.0,
            5,
            Periodic,
            s.lambda0.lambda0,
            w,
            Some((w.1 / 2, E)),
        ));
    }
    out.sort_by(|x, y| x.id.cmp(&y.id));
    out
}
