use std::collections::BTreeMap;
use std::time::Instant;

use itertools::Itertools;

use crate::coact::{tau, Coaction, CoactionKind};
use crate::error::Result;
use crate::exactnum::{EvalPoint, LaurentMatrix, LaurentPoly, Rational};
use crate::lifting::{build_fft_complex, build_sft_complex, exactness_entry, hom_matrix, ComplexEntry, ExactnessReport};
use crate::qalgebra::{Algebra, AlgebraHom, Deformation, Monomial, NCPoly};
use crate::qhopf::{matrix_coproduct_into, quantum_minor, IndexSet};

use super::{
    conjugation_free_spec, partition_count, slr_free_spec, Check, DegreeRecord, ExperimentParams, ParamsDoc, Report,
};

fn points(params: &ExperimentParams) -> Vec<EvalPoint> {
    let mut p = vec![EvalPoint::q1(), EvalPoint::Generic];
    p.extend(params.lambdas.iter().cloned().map(EvalPoint::Specialized));
    p
}

fn deformation_label(def: Deformation) -> String {
    if def.classical { "classical" } else { "generic" }.into()
}

fn params_doc(params: &ExperimentParams, def: Deformation) -> ParamsDoc {
    ParamsDoc {
        kind: params.kind,
        dmax: params.dmax,
        lambdas: params.lambdas.iter().map(|l| l.to_string()).collect(),
        ceiling: params.ceiling.to_string(),
        deformation: deformation_label(def),
    }
}

fn timings_enabled() -> bool {
    std::env::var_os("QCOINV_TIMINGS").is_some_and(|v| !v.is_empty() && v != "0")
}

/// Records the complex `name` on `rec`: the containment `psi phi = 0`, ranks at
/// every point, and the implication `q = 1 exact => generic exact`. Exactness
/// at `q = 1` and generically is asserted when `asserted`; other points are findings.
fn record_lifting(
    rec: &mut DegreeRecord,
    name: &str,
    entry: &ComplexEntry,
    points: &[EvalPoint],
    asserted: bool,
) -> Result<ExactnessReport> {
    rec.flags
        .insert(format!("{name}_complex"), entry.psi.mul(&entry.phi)?.is_zero());
    let entries = points
        .iter()
        .map(|p| exactness_entry(entry, p))
        .collect::<Result<Vec<_>>>()?;
    let report = ExactnessReport {
        degree: entry.d,
        dim_b: entry.dim_b(),
        entries,
    };
    rec.flags.insert(format!("{name}_implication"), report.implication_holds());
    for e in &report.entries {
        let key = format!("{name}_exact_{}", e.at);
        let main = e.at == EvalPoint::q1().to_string() || e.at == EvalPoint::Generic.to_string();
        if asserted && main {
            rec.flags.insert(key, e.exact);
        } else {
            rec.findings.insert(key, e.exact);
        }
    }
    rec.lifting.insert(name.into(), report.clone());
    Ok(report)
}

fn generic(report: &ExactnessReport) -> (usize, usize) {
    let e = report.at(&EvalPoint::Generic).expect("generic point always evaluated");
    (e.rank_phi, e.rank_psi)
}

fn fill_fft(rec: &mut DegreeRecord, report: &ExactnessReport) {
    let (rank_phi, rank_psi) = generic(report);
    rec.dim_carrier = report.dim_b;
    rec.dim_coinvariants = Some(report.dim_b - rank_psi);
    rec.dim_image = Some(rank_phi);
}

fn fill_sft(rec: &mut DegreeRecord, report: &ExactnessReport, k: usize) {
    let (rank_phi, rank_psi) = generic(report);
    rec.source_degree = Some(k);
    rec.dim_source = Some(report.dim_b);
    rec.dim_kernel = Some(report.dim_b - rank_psi);
    rec.dim_ideal = Some(rank_phi);
}

fn finish(params: &ExperimentParams, def: Deformation, experiment: String, degrees: Vec<DegreeRecord>, checks: Vec<Check>, start: Instant) -> Report {
    Report {
        experiment,
        params: params_doc(params, def),
        degrees,
        checks,
        verdict: String::new(),
        wall_ms: timings_enabled().then(|| start.elapsed().as_millis() as u64),
    }
    .finish()
}

/// Runs the experiment selected by `params.kind`.
pub fn verify(params: &ExperimentParams, def: Deformation) -> Result<Report> {
    match params.kind {
        CoactionKind::Interior { .. } => verify_interior(params, def),
        CoactionKind::Slr { .. } => verify_slr(params, def),
        CoactionKind::Conjugation { .. } => verify_conjugation(params, def),
    }
}

fn prepare(params: &ExperimentParams) -> Result<()> {
    params.validate()?;
    params.check_size()
}

/// Interior coaction: the coinvariants of `M_{m,t} (x) M_{t,n}` are the image of
/// multiplication `mu: M_{m,n} -> M_{m,t} (x) M_{t,n}`, whose kernel is the ideal
/// of `(t+1)`-minors.
pub fn verify_interior(params: &ExperimentParams, def: Deformation) -> Result<Report> {
    prepare(params)?;
    let start = Instant::now();
    let CoactionKind::Interior { m, n, t } = params.kind else {
        return Err(crate::Error::InvalidParams("expected interior".into()));
    };
    let pts = points(params);
    let c = Coaction::new(params.kind, def)?;
    let source = Algebra::quantum_matrix(m, n, def)?;
    let mu = matrix_coproduct_into(&source, c.carrier())?;
    let mut gens = Vec::new();
    if t < m.min(n) {
        for rows in (1..=m).combinations(t + 1) {
            for cols in (1..=n).combinations(t + 1) {
                gens.push(quantum_minor(&source, &IndexSet::new(rows.clone(), cols)?)?);
            }
        }
    }
    let mut degrees = Vec::new();
    for e in 0..=2 * params.dmax {
        let mut rec = DegreeRecord {
            d: e,
            ..Default::default()
        };
        let fft = build_fft_complex(&c, &mu, e)?;
        let report = record_lifting(&mut rec, "fft", &fft, &pts, e % 2 == 0)?;
        fill_fft(&mut rec, &report);
        if e % 2 == 0 {
            let sft = build_sft_complex(&gens, &mu, e / 2)?;
            let report = record_lifting(&mut rec, "sft", &sft, &pts, true)?;
            fill_sft(&mut rec, &report, e / 2);
        }
        degrees.push(rec.finish());
    }
    let unit = degrees[0].dim_coinvariants == Some(1);
    let checks = vec![Check::new("unit_coinvariant", unit, "degree 0 coinvariants are the scalars")];
    Ok(finish(params, def, c.kind().name().into(), degrees, checks, start))
}

fn slr_hom(c: &Coaction, n: usize, r: usize, def: Deformation) -> Result<AlgebraHom> {
    let free = Algebra::new(&slr_free_spec(n, r), def)?;
    let cols: Vec<usize> = (1..=r).collect();
    let images = (1..=n)
        .combinations(r)
        .map(|rows| quantum_minor(c.carrier(), &IndexSet::new(rows, cols.clone())?))
        .collect::<Result<Vec<_>>>()?;
    AlgebraHom::new(&free, c.carrier(), images, r)
}

fn plucker_check(free: &Algebra, k2: &[NCPoly], n: usize) -> Result<Check> {
    let tuples: Vec<Vec<usize>> = (1..=n).combinations(2).collect();
    let gen = |a: usize, b: usize| free.generator(tuples.iter().position(|t| t == &[a, b]).expect("pair"));
    let mut relations = Vec::new();
    for abcd in (1..=n).combinations(4) {
        let [a, b, cc, d] = [abcd[0], abcd[1], abcd[2], abcd[3]];
        let p = gen(a, b).mul(&gen(cc, d))?;
        let p = &p - &gen(a, cc).mul(&gen(b, d))?;
        let p = &p + &gen(a, d).mul(&gen(b, cc))?;
        relations.push(p);
    }
    let rows = free.graded_basis(2).len();
    let coords = |ps: &[NCPoly]| ps.iter().map(|p| p.sparse_coordinates(2)).collect::<Result<Vec<_>>>();
    let base = LaurentMatrix::from_columns(rows, coords(k2)?);
    let mut all = coords(k2)?;
    all.extend(coords(&relations)?);
    let with = LaurentMatrix::from_columns(rows, all);
    let q1 = EvalPoint::q1();
    let (r0, r1) = (base.rank(&q1)?, with.rank(&q1)?);
    Ok(Check::new(
        "plucker_in_kernel",
        r0 == r1,
        format!("{} relations, rank {r0} -> {r1} at q=1", relations.len()),
    ))
}

/// `SL_r` coaction on `M_{n,r}`: coinvariants are generated by the maximal
/// minors `[I | 1..r]`; the kernel of the presentation is generated in degree 2.
pub fn verify_slr(params: &ExperimentParams, def: Deformation) -> Result<Report> {
    prepare(params)?;
    let start = Instant::now();
    let CoactionKind::Slr { n, r } = params.kind else {
        return Err(crate::Error::InvalidParams("expected slr".into()));
    };
    let pts = points(params);
    let c = Coaction::new(params.kind, def)?;
    let phi = slr_hom(&c, n, r, def)?;
    let free = phi.source().clone();
    let phi2 = hom_matrix(&phi, 2)?;
    let k2_vectors = phi2.kernel_basis();
    let k2_annihilated = k2_vectors
        .iter()
        .all(|v| phi2.mul_vec(v).iter().all(LaurentPoly::is_zero));
    let k2: Vec<NCPoly> = k2_vectors
        .iter()
        .map(|v| NCPoly::from_coordinates(&free, 2, v))
        .collect::<Result<_>>()?;
    let kmax = params.slr_top_degree();
    let mut records: BTreeMap<usize, DegreeRecord> = BTreeMap::new();
    for d in 0..=params.dmax {
        let mut rec = DegreeRecord {
            d,
            ..Default::default()
        };
        let fft = build_fft_complex(&c, &phi, d)?;
        let report = record_lifting(&mut rec, "fft", &fft, &pts, true)?;
        fill_fft(&mut rec, &report);
        let vectors = fft.psi.kernel_basis();
        if !vectors.is_empty() {
            rec.flags
                .insert("sl_membership_confirms".into(), c.sl_membership_confirms(&vectors, d)?);
        }
        records.insert(d, rec);
    }
    for k in 0..=kmax {
        let d = k * r;
        let rec = records.entry(d).or_insert_with(|| DegreeRecord {
            d,
            dim_carrier: c.carrier().graded_basis(d).len(),
            ..Default::default()
        });
        let sft = build_sft_complex(&k2, &phi, k)?;
        let report = record_lifting(rec, "sft", &sft, &pts, true)?;
        fill_sft(rec, &report, k);
    }
    let degrees: Vec<DegreeRecord> = records.into_values().map(DegreeRecord::finish).collect();
    let mut checks = vec![Check::new(
        "quadratic_kernel",
        k2_annihilated,
        format!("{} quadratic relations among {} generators", k2.len(), free.generator_count()),
    )];
    if r == 2 && n >= 4 {
        checks.push(plucker_check(&free, &k2, n)?);
    }
    Ok(finish(params, def, c.kind().name().into(), degrees, checks, start))
}

fn partitions(d: usize, max_part: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in (1..=max_part.min(d)).rev() {
        for mut rest in partitions(d - p, p) {
            rest.insert(0, p);
            out.push(rest);
        }
    }
    out
}

/// Conjugation coaction on `M_n`: coinvariants are the polynomial ring on the
/// quantum traces `tau_1, ..., tau_n`.
pub fn verify_conjugation(params: &ExperimentParams, def: Deformation) -> Result<Report> {
    prepare(params)?;
    let start = Instant::now();
    let CoactionKind::Conjugation { n } = params.kind else {
        return Err(crate::Error::InvalidParams("expected conjugation".into()));
    };
    let pts = points(params);
    let c = Coaction::new(params.kind, def)?;
    let carrier = c.carrier();
    let free = Algebra::new(&conjugation_free_spec(n), def)?;
    let taus = (1..=n).map(|i| tau(carrier, i)).collect::<Result<Vec<_>>>()?;
    let phi = AlgebraHom::new(&free, carrier, taus.clone(), 1)?;
    let mut gens = Vec::new();
    for (i, j) in (0..n).tuple_combinations() {
        gens.push(free.generator(i).commutator(&free.generator(j))?);
    }
    let mut degrees = Vec::new();
    let mut independent = true;
    let mut counts = Vec::new();
    for d in 0..=params.dmax {
        let mut rec = DegreeRecord {
            d,
            ..Default::default()
        };
        let fft = build_fft_complex(&c, &phi, d)?;
        let report = record_lifting(&mut rec, "fft", &fft, &pts, true)?;
        fill_fft(&mut rec, &report);
        let sft = build_sft_complex(&gens, &phi, d)?;
        let report = record_lifting(&mut rec, "sft", &sft, &pts, true)?;
        fill_sft(&mut rec, &report, d);

        let products = partitions(d, n)
            .into_iter()
            .map(|parts| {
                parts
                    .iter()
                    .rev()
                    .try_fold(carrier.one(), |acc, &p| acc.mul(&taus[p - 1]))
                    .and_then(|x| x.sparse_coordinates(d))
            })
            .collect::<Result<Vec<_>>>()?;
        let expected = partition_count(d, n);
        let rank = LaurentMatrix::from_columns(carrier.graded_basis(d).len(), products).rank(&EvalPoint::Generic)?;
        independent &= rank == expected;
        counts.push(format!("{rank}/{expected}"));
        degrees.push(rec.finish());
    }
    let mut checks = vec![Check::new(
        "tau_monomials_independent",
        independent,
        format!("rank/partitions by degree: {}", counts.join(" ")),
    )];
    let mut coinvariant = true;
    for (i, t) in taus.iter().enumerate() {
        coinvariant &= c.is_coinvariant(t, i + 1)?;
    }
    checks.push(Check::new("tau_coinvariant", coinvariant, format!("tau_1..tau_{n}")));
    let mut commute = true;
    for (a, b) in taus.iter().tuple_combinations() {
        commute &= a.commutator(b)?.is_zero();
    }
    checks.push(Check::new("tau_commute", commute, format!("{} pairs", n * (n - 1) / 2)));
    Ok(finish(params, def, c.kind().name().into(), degrees, checks, start))
}

fn terms_of(p: &NCPoly) -> Vec<(Monomial, LaurentPoly)> {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

/// Runs the experiment classically and generically and compares dimensions
/// degree by degree.
pub fn classical_baseline(params: &ExperimentParams) -> Result<Report> {
    let generic = verify(params, Deformation::GENERIC)?;
    classical_baseline_against(params, &generic)
}

/// As [`classical_baseline`], against an existing generic report.
pub fn classical_baseline_against(params: &ExperimentParams, generic: &Report) -> Result<Report> {
    let start = Instant::now();
    let classical = verify(params, Deformation::CLASSICAL)?;
    let mut checks = vec![Check::new(
        "classical_verdict",
        classical.passed(),
        format!("classical run: {}", classical.verdict),
    )];
    for rec in &classical.degrees {
        let other = generic.degree(rec.d);
        let same = other.is_some_and(|g| g.dims() == rec.dims());
        let show = |r: &DegreeRecord| {
            r.dims()
                .iter()
                .map(|x| x.map_or("-".into(), |v| v.to_string()))
                .join("/")
        };
        checks.push(Check::new(
            &format!("dims_match_d{}", rec.d),
            same,
            format!(
                "classical {} vs generic {}",
                show(rec),
                other.map_or("missing".into(), show)
            ),
        ));
    }
    if let CoactionKind::Conjugation { n } = params.kind {
        let q = Algebra::quantum_matrix(n, n, Deformation::GENERIC)?;
        let cl = Algebra::quantum_matrix(n, n, Deformation::CLASSICAL)?;
        let one = Rational::from_integer(1.into());
        let mut same = true;
        for i in 1..=n {
            same &= terms_of(&tau(&q, i)?.specialize(&one)?) == terms_of(&tau(&cl, i)?);
        }
        checks.push(Check::new(
            "tau_specializes_to_trace",
            same,
            format!("tau_i at q=1 against classical tr_i, i = 1..{n}"),
        ));
    }
    let mut report = finish(
        params,
        Deformation::CLASSICAL,
        format!("baseline-{}", params.kind.name()),
        classical.degrees,
        checks,
        start,
    );
    report.checks.extend(classical.checks.into_iter().map(|mut c| {
        c.name = format!("classical_{}", c.name);
        c
    }));
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_lists() {
        assert_eq!(partitions(4, 2), vec![vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(partitions(0, 3), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn small_interior() {
        let p = ExperimentParams::new(CoactionKind::Interior { m: 2, n: 2, t: 1 }, 2);
        let r = verify_interior(&p, Deformation::GENERIC).unwrap();
        assert!(r.passed(), "{}", r.to_markdown());
        let dims: Vec<_> = r.degrees.iter().map(|d| d.dim_coinvariants.unwrap()).collect();
        assert_eq!(dims, vec![1, 0, 4, 0, 9]);
    }
}
