//! The exponent conjectures and the theorem predicates built around them.
//!
//! Three conjectures about e(M(G)), the exponent of the Schur multiplier:
//! C1: e(M(G)) | e(G); C2: e(M(G)) | e(G)^2; C3 (p-groups): e(M(G)) | p e(G).
//! Each theorem below promises one of these bounds (or an exterior-square
//! bound) under checkable structural hypotheses. Every claim is evaluated on
//! exact computed exponents. A theorem whose hypotheses hold but whose bound
//! fails is a red alert: it indicates a bug in this toolkit (or a transcription
//! error), never an accepted outcome.

use serde::Serialize;

use crate::group::{Maybe, PcGroup, Structure};
use crate::tensor::{tensor_square, TensorSquareResult};
use crate::Result;

pub const SCHEMA_VERSION: u32 = 1;

fn divides(a: u64, b: u64) -> bool {
    a != 0 && b % a == 0
}

fn is_prime(n: u64) -> bool {
    n >= 2 && crate::group::prime_divisors(n) == vec![n]
}

/// p-adic valuation of n (n a power of p times a unit; exact for our uses).
fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Verdicts for the three conjectures on one group.
#[derive(Debug, Clone, Serialize)]
pub struct ConjectureVerdict {
    pub group_exponent: u64,
    pub multiplier_exponent: u64,
    pub prime: Option<u64>,
    /// e(M(G)) | e(G)
    pub c1: bool,
    /// e(M(G)) | e(G)^2
    pub c2: bool,
    /// e(M(G)) | p e(G); only for p-groups
    pub c3: Option<bool>,
}

impl ConjectureVerdict {
    fn evaluate(st: &Structure, t: &TensorSquareResult) -> ConjectureVerdict {
        let e = st.exponent;
        let em = t.multiplier_exponent;
        ConjectureVerdict {
            group_exponent: e,
            multiplier_exponent: em,
            prime: st.prime,
            c1: divides(em, e),
            c2: divides(em, e * e),
            c3: st.prime.map(|p| divides(em, p * e)),
        }
    }
}

/// One theorem instance evaluated on one group.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremCheck {
    pub id: String,
    pub statement: String,
    pub hypotheses_satisfied: Maybe,
    pub hypothesis_note: String,
    pub promised_bound: String,
    pub bound_holds: bool,
    /// hypotheses satisfied and the bound failed
    pub red_alert: bool,
}

struct Claim {
    id: &'static str,
    statement: &'static str,
    hypotheses: (Maybe, String),
    bound: String,
    holds: bool,
}

/// Abelian normal subgroup with prime-power index p^l.
struct AbelianNormal {
    p: u64,
    l: u32,
    exponent: u64,
    quotient_exponent: u64,
}

fn abelian_normals(g: &PcGroup, st: &Structure) -> Vec<AbelianNormal> {
    let Some(table) = g.table() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for n in &st.normal_subgroups {
        if !table.is_abelian_subset(n) {
            continue;
        }
        let index = st.order / n.len() as u64;
        if index == 1 {
            continue;
        }
        let Some(p) = crate::group::prime_power_base(index) else {
            continue;
        };
        let q = table.quotient_table(n);
        let all: Vec<u32> = (0..q.table.m as u32).collect();
        out.push(AbelianNormal {
            p,
            l: valuation(index, p),
            exponent: table.exponent_of(n),
            quotient_exponent: q.table.exponent_of(&all),
        });
    }
    out
}

/// Evaluate every theorem predicate and the conjecture verdicts on one group.
pub fn check(
    g: &PcGroup,
    st: &Structure,
    t: &TensorSquareResult,
) -> Result<(ConjectureVerdict, Vec<TheoremCheck>)> {
    let verdict = ConjectureVerdict::evaluate(st, t);
    let e = st.exponent;
    let em = t.multiplier_exponent;
    let ew = t.exterior_exponent;
    let p = st.prime;
    let odd_p = p.is_some_and(|p| p % 2 == 1);
    let class = st.nilpotency_class;
    let d = st.derived_length;
    let eq = st.exponent_central_quotient;
    let ez = st.exponent_center;
    let normals = abelian_normals(g, st);

    let yes = |cond: bool, why: &str| -> (Maybe, String) {
        if cond {
            (Maybe::True, String::new())
        } else {
            (Maybe::False, why.to_string())
        }
    };
    let tri = |m: Maybe, why: &str| -> (Maybe, String) {
        match m {
            Maybe::True => (Maybe::True, String::new()),
            Maybe::False => (Maybe::False, why.to_string()),
            Maybe::Unknown => (Maybe::Unknown, format!("undecided: {why}")),
        }
    };
    let opt = |o: Option<bool>, why: &str| -> (Maybe, String) {
        match o {
            Some(true) => (Maybe::True, String::new()),
            Some(false) => (Maybe::False, why.to_string()),
            None => (Maybe::Unknown, format!("not computed: {why}")),
        }
    };

    let mut claims: Vec<Claim> = Vec::new();

    claims.push(Claim {
        id: "A.i",
        statement: "e(G/Z(G)) in {2,3} implies e(M(G)) | e(G)",
        hypotheses: yes(eq == 2 || eq == 3, "e(G/Z(G)) is not 2 or 3"),
        bound: format!("{em} | {e}"),
        holds: divides(em, e),
    });
    claims.push(Claim {
        id: "A.ii",
        statement: "e(G/Z(G)) = 6 implies e(M(G)) | e(G)",
        hypotheses: yes(eq == 6, "e(G/Z(G)) is not 6"),
        bound: format!("{em} | {e}"),
        holds: divides(em, e),
    });
    claims.push(Claim {
        id: "A.iii",
        statement: "odd p-group with abelian Frattini subgroup satisfies e(M(G)) | e(G)",
        hypotheses: if !odd_p {
            (Maybe::False, "not an odd p-group".into())
        } else {
            opt(st.frattini_abelian, "Frattini subgroup")
        },
        bound: format!("{em} | {e}"),
        holds: divides(em, e),
    });
    claims.push(Claim {
        id: "A.iv",
        statement: "p-group with cyclic commutator subgroup satisfies e(M(G)) | e(G)",
        hypotheses: yes(
            p.is_some() && st.commutator_cyclic,
            "not a p-group with cyclic G'",
        ),
        bound: format!("{em} | {e}"),
        holds: divides(em, e),
    });

    claims.push(Claim {
        id: "B.i",
        statement: "m-generator group of exponent 5 with 2 <= m < 4 satisfies e(M(G)) | e(G)^2",
        hypotheses: if e != 5 {
            (Maybe::False, "exponent is not 5".into())
        } else {
            match st.min_generators {
                Some(m) if (2..4).contains(&m) => (Maybe::True, String::new()),
                Some(_) => (Maybe::False, "generator count outside 2..3".into()),
                None => (Maybe::Unknown, "generator count not computed".into()),
            }
        },
        bound: format!("{em} | {}", e * e),
        holds: divides(em, e * e),
    });
    claims.push(Claim {
        id: "B.ii",
        statement: "odd solvable group of exponent p and derived length 3 satisfies e(M(G)) | e(G)^2",
        hypotheses: yes(
            st.order % 2 == 1 && is_prime(e) && d == 3,
            "not odd of prime exponent and derived length 3",
        ),
        bound: format!("{em} | {}", e * e),
        holds: divides(em, e * e),
    });
    let b3 = normals
        .iter()
        .any(|n| odd_p && n.l < 7.max(n.p as u32 + 2));
    claims.push(Claim {
        id: "B.iii",
        statement:
            "odd p-group with abelian normal subgroup of index p^l, l < max(7, p+2), satisfies e(M(G)) | e(G)^2",
        hypotheses: if b3 {
            (Maybe::True, String::new())
        } else {
            yes(false, "no qualifying abelian normal subgroup found")
        },
        bound: format!("{em} | {}", e * e),
        holds: divides(em, e * e),
    });
    claims.push(Claim {
        id: "B.iv",
        statement: "odd p-group with powerful commutator subgroup satisfies e(M(G)) | e(G)^2",
        hypotheses: if !odd_p {
            (Maybe::False, "not an odd p-group".into())
        } else {
            opt(st.commutator_powerful, "powerful test")
        },
        bound: format!("{em} | {}", e * e),
        holds: divides(em, e * e),
    });
    claims.push(Claim {
        id: "B.v",
        statement: "odd p-group with gamma_{p+1}(G) powerful satisfies e(M(G)) | e(G)^2",
        hypotheses: if !odd_p {
            (Maybe::False, "not an odd p-group".into())
        } else {
            opt(st.gamma_p_plus_1_powerful, "powerful test")
        },
        bound: format!("{em} | {}", e * e),
        holds: divides(em, e * e),
    });

    let pe = p.map(|p| p * e).unwrap_or(0);
    claims.push(Claim {
        id: "C.i",
        statement: "odd p-group of nilpotency class 7 satisfies e(M(G)) | p e(G)",
        hypotheses: yes(odd_p && class == Some(7), "not an odd p-group of class 7"),
        bound: format!("{em} | {pe}"),
        holds: divides(em, pe),
    });
    claims.push(Claim {
        id: "C.ii",
        statement: "p-group with e(Z(G)) = p and class <= p+1 satisfies e(M(G)) | p e(G)",
        hypotheses: yes(
            p.is_some_and(|p| ez == p && class.is_some_and(|c| c as u64 <= p + 1)),
            "center exponent or class condition fails",
        ),
        bound: format!("{em} | {pe}"),
        holds: divides(em, pe),
    });
    let c3_hyp = normals.iter().any(|n| n.p % 2 == 1 && n.l == 2);
    claims.push(Claim {
        id: "C.iii",
        statement:
            "group with abelian normal subgroup of index p^2, p odd, satisfies e(M(G)) | p e(G)",
        hypotheses: yes(c3_hyp, "no abelian normal subgroup of odd prime-squared index"),
        bound: format!("{em} | {pe}"),
        holds: divides(em, pe),
    });
    claims.push(Claim {
        id: "C.iv",
        statement: "2-group with abelian Frattini subgroup satisfies e(M(G)) | 2 e(G)",
        hypotheses: if p != Some(2) {
            (Maybe::False, "not a 2-group".into())
        } else {
            opt(st.frattini_abelian, "Frattini subgroup")
        },
        bound: format!("{em} | {}", 2 * e),
        holds: divides(em, 2 * e),
    });
    claims.push(Claim {
        id: "C.v",
        statement: "odd p-group with powerful Frattini subgroup satisfies e(M(G)) | p e(G)",
        hypotheses: if !odd_p {
            (Maybe::False, "not an odd p-group".into())
        } else {
            opt(st.frattini_powerful, "powerful test")
        },
        bound: format!("{em} | {pe}"),
        holds: divides(em, pe),
    });

    claims.push(Claim {
        id: "prop-6.7",
        statement: "metacyclic group satisfies e(G∧G) | e(G)",
        hypotheses: tri(st.is_metacyclic, "not metacyclic"),
        bound: format!("{ew} | {e}"),
        holds: divides(ew, e),
    });
    claims.push(Claim {
        id: "lemma-5.4",
        statement: "metabelian group of prime exponent satisfies e(G∧G) | e(G)",
        hypotheses: yes(d <= 2 && is_prime(e), "not metabelian of prime exponent"),
        bound: format!("{ew} | {e}"),
        holds: divides(ew, e),
    });
    let solvable_bound = if e >= 2 && is_prime(e) && d >= 2 {
        let base = e.pow(d - 1);
        if e % 2 == 1 {
            base
        } else {
            (1u64 << (d - 2)) * base
        }
    } else {
        0
    };
    claims.push(Claim {
        id: "thm-solvable",
        statement:
            "solvable group of prime exponent p and derived length d >= 2: e(G∧G) | e(G)^{d-1} (odd p), 2^{d-2} e(G)^{d-1} (p = 2)",
        hypotheses: yes(is_prime(e) && d >= 2, "exponent not prime or derived length < 2"),
        bound: format!("{ew} | {solvable_bound}"),
        holds: divides(ew, solvable_bound),
    });
    claims.push(Claim {
        id: "thm-4.12",
        statement: "3-group of class <= 7 satisfies e(G∧G) | 3 e(G)",
        hypotheses: yes(
            p == Some(3) && class.is_some_and(|c| c <= 7),
            "not a 3-group of class <= 7",
        ),
        bound: format!("{ew} | {}", 3 * e),
        holds: divides(ew, 3 * e),
    });
    claims.push(Claim {
        id: "thm-4.16",
        statement: "5-group of class <= 7 satisfies e(G∧G) | 5 e(G)",
        hypotheses: yes(
            p == Some(5) && class.is_some_and(|c| c <= 7),
            "not a 5-group of class <= 7",
        ),
        bound: format!("{ew} | {}", 5 * e),
        holds: divides(ew, 5 * e),
    });
    claims.push(Claim {
        id: "thm-4.17",
        statement: "odd p-group of class 7 satisfies e(G∧G) | p e(G)",
        hypotheses: yes(odd_p && class == Some(7), "not an odd p-group of class 7"),
        bound: format!("{ew} | {pe}"),
        holds: divides(ew, pe),
    });
    // e(Z(G)) | p^t, class <= p+m  =>  e(G∧G) | p^{mt} e(G/Z(G)); the check
    // instantiates the smallest applicable m = max(1, class - p).
    let center_bound = match (p, class) {
        (Some(p), Some(c)) => {
            let t_val = valuation(ez, p);
            let m = 1.max((c as u64).saturating_sub(p)) as u32;
            p.pow(m * t_val) * eq
        }
        _ => 0,
    };
    claims.push(Claim {
        id: "prop-center",
        statement:
            "p-group with e(Z(G)) | p^t and class <= p+m satisfies e(G∧G) | p^{mt} e(G/Z(G))",
        hypotheses: yes(p.is_some() && class.is_some(), "not a nilpotent p-group"),
        bound: format!("{ew} | {center_bound}"),
        holds: divides(ew, center_bound),
    });
    claims.push(Claim {
        id: "prop-5.1",
        statement: "e(G/Z(G)) in {2,3} implies e(G∧G) | e(G)",
        hypotheses: yes(eq == 2 || eq == 3, "e(G/Z(G)) is not 2 or 3"),
        bound: format!("{ew} | {e}"),
        holds: divides(ew, e),
    });
    claims.push(Claim {
        id: "prop-cyclic-commutator",
        statement: "odd p-group with cyclic commutator subgroup satisfies e(G∧G) | e(G)",
        hypotheses: yes(odd_p && st.commutator_cyclic, "not an odd p-group with cyclic G'"),
        bound: format!("{ew} | {e}"),
        holds: divides(ew, e),
    });

    // Prop 6.3: evaluated against every qualifying abelian normal subgroup;
    // the bound must hold for each instantiation.
    let p63i: Vec<&AbelianNormal> = normals.iter().filter(|n| n.l >= 2).collect();
    let p63i_bound_holds = p63i.iter().all(|n| {
        let extra = if n.p % 2 == 1 {
            n.p.pow(n.l.div_ceil(2))
        } else {
            n.p.pow(n.l.div_ceil(2) + 1)
        };
        divides(em, extra * e)
    });
    claims.push(Claim {
        id: "prop-6.3.i",
        statement:
            "abelian normal subgroup of index p^l, l >= 2: e(M(G)) | p^{ceil(l/2)} e(G) (odd p), p^{ceil(l/2)+1} e(G) (p = 2)",
        hypotheses: yes(!p63i.is_empty(), "no abelian normal subgroup of index p^l, l >= 2"),
        bound: "per qualifying subgroup".to_string(),
        holds: p63i_bound_holds,
    });
    let p63ii: Vec<&AbelianNormal> = normals
        .iter()
        .filter(|n| {
            if n.p % 2 == 1 {
                n.l < 7.max(n.p as u32 + 2)
            } else {
                n.l < 5
            }
        })
        .collect();
    let p63ii_bound_holds = p63ii.iter().all(|n| {
        let rhs = if n.p % 2 == 1 {
            n.exponent * n.quotient_exponent
        } else {
            2 * n.exponent * n.quotient_exponent
        };
        divides(ew, rhs)
    });
    claims.push(Claim {
        id: "prop-6.3.ii",
        statement:
            "abelian normal subgroup of small index p^l: e(G∧G) | e(N) e(G/N) (odd p), 2 e(N) e(G/N) (p = 2)",
        hypotheses: yes(!p63ii.is_empty(), "no qualifying abelian normal subgroup"),
        bound: "per qualifying subgroup".to_string(),
        holds: p63ii_bound_holds,
    });

    let checks = claims
        .into_iter()
        .map(|c| {
            let red_alert = c.hypotheses.0 == Maybe::True && !c.holds;
            TheoremCheck {
                id: c.id.to_string(),
                statement: c.statement.to_string(),
                hypotheses_satisfied: c.hypotheses.0,
                hypothesis_note: c.hypotheses.1,
                promised_bound: c.bound,
                bound_holds: c.holds,
                red_alert,
            }
        })
        .collect();
    Ok((verdict, checks))
}

/// IDs of every group whose hypotheses a structure satisfies.
pub fn classify(g: &PcGroup, st: &Structure, t: &TensorSquareResult) -> Result<Vec<String>> {
    let (_, checks) = check(g, st, t)?;
    Ok(checks
        .into_iter()
        .filter(|c| c.hypotheses_satisfied == Maybe::True)
        .map(|c| c.id)
        .collect())
}

/// One scan row; enumeration failures become resource verdicts, never
/// fabricated values.
#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub group: String,
    pub status: String,
    pub detail: Option<String>,
    pub order: Option<u64>,
    pub class: Option<u32>,
    pub derived_length: Option<u32>,
    pub exponent: Option<u64>,
    pub exponent_center: Option<u64>,
    pub exponent_central_quotient: Option<u64>,
    pub tensor: Option<TensorSquareResult>,
    pub conjectures: Option<ConjectureVerdict>,
    pub theorems: Vec<TheoremCheck>,
    pub red_alerts: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub seed: u64,
    pub budget: u64,
    pub rows: Vec<ScanRow>,
}

impl Report {
    pub fn red_alert_count(&self) -> usize {
        self.rows.iter().map(|r| r.red_alerts.len()).sum()
    }

    pub fn rejected_count(&self) -> usize {
        self.rows.iter().filter(|r| r.status == "rejected").count()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Flat projection; nested invariants and per-theorem records are JSON-only.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "group,status,order,class,derived_length,exponent,tensor_exponent,exterior_exponent,multiplier_exponent,multiplier_order,c1,c2,c3,red_alerts\n",
        );
        let fmt_u64 = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        let fmt_u32 = |v: Option<u32>| v.map(|x| x.to_string()).unwrap_or_default();
        let fmt_bool = |v: Option<bool>| v.map(|x| x.to_string()).unwrap_or_default();
        for r in &self.rows {
            let t = r.tensor.as_ref();
            let c = r.conjectures.as_ref();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                r.group,
                r.status,
                fmt_u64(r.order),
                fmt_u32(r.class),
                fmt_u32(r.derived_length),
                fmt_u64(r.exponent),
                fmt_u64(t.map(|t| t.tensor_exponent)),
                fmt_u64(t.map(|t| t.exterior_exponent)),
                fmt_u64(t.map(|t| t.multiplier_exponent)),
                fmt_u64(t.map(|t| t.multiplier_order)),
                fmt_bool(c.map(|c| c.c1)),
                fmt_bool(c.map(|c| c.c2)),
                fmt_bool(c.and_then(|c| c.c3)),
                r.red_alerts.len()
            ));
        }
        out
    }
}

/// Scan a list of named presentations. Per-row failures (inconsistent
/// presentation, budget exhaustion, envelope) are recorded in the row.
pub fn scan(
    presentations: Vec<crate::pcp::PcPresentation>,
    budget: u64,
    extended: bool,
    seed: u64,
) -> Report {
    let mut rows = Vec::new();
    for pcp in presentations {
        let name = pcp.name().unwrap_or("(unnamed)").to_string();
        rows.push(scan_row(name, pcp, budget, extended));
    }
    Report {
        schema_version: SCHEMA_VERSION,
        seed,
        budget,
        rows,
    }
}

/// Row for an input that failed to parse or validate.
pub fn rejected_row(name: String, detail: String) -> ScanRow {
    empty_row(name, "rejected", Some(detail))
}

fn empty_row(name: String, status: &str, detail: Option<String>) -> ScanRow {
    ScanRow {
        group: name,
        status: status.to_string(),
        detail,
        order: None,
        class: None,
        derived_length: None,
        exponent: None,
        exponent_center: None,
        exponent_central_quotient: None,
        tensor: None,
        conjectures: None,
        theorems: Vec::new(),
        red_alerts: Vec::new(),
    }
}

/// Evaluate one presentation: validation, structure, enumeration, verdicts.
pub fn scan_row(
    name: String,
    pcp: crate::pcp::PcPresentation,
    budget: u64,
    extended: bool,
) -> ScanRow {
    let g = match PcGroup::new(pcp) {
        Ok(g) => g,
        Err(e) => return empty_row(name, "rejected", Some(e.to_string())),
    };
    let st = match g.structure() {
        Ok(st) => st,
        Err(e) => return empty_row(name, "rejected", Some(e.to_string())),
    };
    let mut row = empty_row(name, "ok", None);
    row.order = Some(st.order);
    row.class = st.nilpotency_class;
    row.derived_length = Some(st.derived_length);
    row.exponent = Some(st.exponent);
    row.exponent_center = Some(st.exponent_center);
    row.exponent_central_quotient = Some(st.exponent_central_quotient);
    let tensor = match tensor_square(&g, budget, extended) {
        Ok(t) => t,
        Err(e) => {
            row.status = "resource".to_string();
            row.detail = Some(e.to_string());
            return row;
        }
    };
    match check(&g, &st, &tensor) {
        Ok((verdict, theorems)) => {
            for t in &theorems {
                if t.red_alert {
                    row.red_alerts.push(format!(
                        "{}: hypotheses hold but {} fails",
                        t.id, t.promised_bound
                    ));
                }
            }
            if !divides(tensor.multiplier_exponent, tensor.exterior_exponent) {
                row.red_alerts
                    .push("e(M(G)) does not divide e(G∧G)".to_string());
            }
            if verdict.c1 && !verdict.c2 {
                row.red_alerts.push("cascade violated: c1 but not c2".into());
            }
            if verdict.c1 && verdict.c3 == Some(false) {
                row.red_alerts.push("cascade violated: c1 but not c3".into());
            }
            row.conjectures = Some(verdict);
            row.theorems = theorems;
        }
        Err(e) => {
            row.status = "rejected".to_string();
            row.detail = Some(e.to_string());
        }
    }
    row.tensor = Some(tensor);
    row
}
