use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use confext::cdmod::CdLinearMap;
use confext::conformal::ConformalAlgebra;
use confext::hochschild::{
    cochain_map, default_truncation, differential, random_cochain, solve_coboundary,
    solve_coboundary_escalating, truncated_cohomology_dim, Cochain, HochschildError, Truncation,
};
use confext::homotopy::{
    check_crossed, check_twoterm, cocycle_to_skeletal, crossed_extension_theta, crossed_to_shac,
    shac_to_crossed, skeletal_to_cocycle, HomotopyError,
};
use confext::mcgauge::{embed_cocycle, Ambient, GaugeParameter};
use confext::nonabelian::{
    build_extension, check_cocycle, cocycle_of_extension, equivalence_obstruction, equivalence_residuals,
    equivalence_transform, solve_equivalence, Extension, NonAbelianError,
};
use confext::wells::{
    extend_derivation, induce_automorphism, wells_a, wells_aut, wells_b, wells_der, AutPair, Certificate,
    DerPair, WellsClass, WellsError, ZeroStatus,
};

use crate::report::{detail, Report, Verdict};
use crate::session::{self as ss, split_ref, InputError, Kind, Session};
use crate::{Cli, CocycleCmd, Command, CrossedCmd, ExtCmd, McCmd, ShacCmd, Side, WellsArgs, WellsCmd};

type Res = Result<Report, InputError>;

pub fn dispatch(cli: &Cli) -> Res {
    match &cli.command {
        Command::Validate { file } => validate(&Session::load(file)?),
        Command::Diff { cochain } => diff(cochain),
        Command::Cocycle(CocycleCmd::Check { object }) => cocycle_check(object),
        Command::Cocycle(CocycleCmd::Coboundary { cochain }) => coboundary(cli, cochain),
        Command::Cohomology { bimodule, n } => cohomology(cli, bimodule, *n),
        Command::Ext(ExtCmd::Build { cocycle }) => ext_build(cocycle),
        Command::Ext(ExtCmd::CocycleOf { extension }) => ext_cocycle_of(extension),
        Command::Ext(ExtCmd::Equivalent { cocycle, other }) => ext_equivalent(cli, cocycle, other),
        Command::Mc(McCmd::Check { cocycle }) => mc_check(cocycle),
        Command::Mc(McCmd::Gauge { cocycle, xi }) => mc_gauge(cli, cocycle, xi.as_deref()),
        Command::Wells(WellsCmd::Aut(args)) => wells(cli, args, false),
        Command::Wells(WellsCmd::Der(args)) => wells(cli, args, true),
        Command::Crossed(CrossedCmd::Check { crossed }) => crossed_check(crossed),
        Command::Crossed(CrossedCmd::ToShac { crossed }) => crossed_to(crossed),
        Command::Crossed(CrossedCmd::FromShac { shac }) => crossed_from(shac),
        Command::Crossed(CrossedCmd::Theta { extension }) => crossed_theta(extension),
        Command::Shac(ShacCmd::Check { shac }) => shac_check(shac),
        Command::Shac(ShacCmd::ToCocycle { shac }) => shac_to_cocycle(shac),
        Command::Shac(ShacCmd::FromCocycle { cochain }) => shac_from_cocycle(cochain),
    }
}

/// Load the file of `r` and pick the object of `kind` it names.
fn open(r: &str, kind: Kind) -> Result<(Session, String), InputError> {
    let (path, name) = split_ref(r);
    let s = Session::load(Path::new(path))?;
    let n = s.pick(kind, name)?;
    Ok((s, n))
}

/// The `(identity, tuple, value)` of the first nonzero entry, as a detail.
fn first_nonzero(identity: &str, c: &Cochain) -> Option<crate::report::Detail> {
    c.first_nonzero().map(|(t, v)| detail(None, identity, &t, &v))
}

fn nonzero_details(rep: &mut Report, identity: &str, c: &Cochain) {
    for t in c.tuples() {
        let v = c.get(&t);
        if !v.is_zero() {
            rep.details.push(detail(None, identity, &t, v));
        }
    }
}

fn validate(s: &Session) -> Res {
    let mut rep = Report::new("validate", Verdict::Pass);
    let f = &s.file;
    let mut count = 0;
    for name in f.algebras.keys() {
        let a = s.algebra(name)?;
        rep.add_failures(&a.check_associativity(), Some(&format!("algebras.{name}")));
        count += 1;
    }
    for name in f.bimodules.keys() {
        let m = s.bimodule(name)?;
        rep.add_failures(&m.check(), Some(&format!("bimodules.{name}")));
        count += 1;
    }
    for name in f.cochains.keys() {
        s.cochain(name)?;
        count += 1;
    }
    for name in f.cocycles.keys() {
        rep.add_failures(&check_cocycle(&s.cocycle(name)?), Some(&format!("cocycles.{name}")));
        count += 1;
    }
    for name in f.extensions.keys() {
        let obj = format!("extensions.{name}");
        match s.extension(name)? {
            Ok(_) => {}
            Err(NonAbelianError::InvalidExtension(r)) => rep.add_failures(&r, Some(&obj)),
            Err(e) => return Err(s.err(obj, e.to_string())),
        }
        count += 1;
    }
    for (name, m) in &f.maps {
        s.matrix(&ss::MapRef::Inline(m.clone()), &format!("maps.{name}"))?;
        count += 1;
    }
    for (name, p) in &f.pairs {
        for (side, r) in [("a", &p.a), ("b", &p.b)] {
            if let Some(r) = r {
                s.matrix(r, &format!("pairs.{name}.{side}"))?;
            }
        }
        count += 1;
    }
    for name in f.crossed_modules.keys() {
        rep.add_failures(&check_crossed(&s.crossed(name)?), Some(&format!("crossed_modules.{name}")));
        count += 1;
    }
    for name in f.crossed_extensions.keys() {
        let obj = format!("crossed_extensions.{name}");
        match s.crossed_extension(name)? {
            Ok(_) => {}
            Err(
                HomotopyError::InvalidCrossedModule(r)
                | HomotopyError::InvalidExtension(r)
                | HomotopyError::InvalidSections(r),
            ) => rep.add_failures(&r, Some(&obj)),
            Err(e) => return Err(s.err(obj, e.to_string())),
        }
        count += 1;
    }
    for name in f.shacs.keys() {
        rep.add_failures(&check_twoterm(&s.shac(name)?), Some(&format!("shacs.{name}")));
        count += 1;
    }
    if !rep.details.is_empty() {
        rep.verdict = Verdict::Fail;
    }
    rep.quantities.insert("objects".into(), count);
    Ok(rep)
}

fn diff(r: &str) -> Res {
    let (s, name) = open(r, Kind::Cochain)?;
    let (m, c) = s.cochain(&name)?;
    let d = differential(&m, &c);
    let mut rep = Report::new("diff", Verdict::Pass);
    let bm = &s.file.cochains[&name].bimodule;
    rep.witnesses.cochains.insert(format!("d_{name}"), ss::cochain_spec(&m, &d, bm));
    Ok(rep)
}

fn cocycle_check(r: &str) -> Res {
    let (path, name) = split_ref(r);
    let s = Session::load(Path::new(path))?;
    let is_cochain = match name {
        Some(n) => !s.has(Kind::Cocycle, n) && s.has(Kind::Cochain, n),
        None => s.file.cocycles.is_empty() && !s.file.cochains.is_empty(),
    };
    if is_cochain {
        let name = s.pick(Kind::Cochain, name)?;
        let (m, c) = s.cochain(&name)?;
        let d = differential(&m, &c);
        let mut rep = Report::new("cocycle check", if d.is_zero() { Verdict::Pass } else { Verdict::Fail });
        nonzero_details(&mut rep, "d", &d);
        return Ok(rep);
    }
    let name = s.pick(Kind::Cocycle, name)?;
    let c = s.cocycle(&name)?;
    Ok(Report::from_check("cocycle check", &check_cocycle(&c), None))
}

fn coboundary(cli: &Cli, r: &str) -> Res {
    let (s, name) = open(r, Kind::Cochain)?;
    let (m, c) = s.cochain(&name)?;
    let b = s.bounds();
    let explicit = cli.ddeg.or(b.ddeg).is_some() || cli.ldeg.or(b.ldeg).is_some();
    let dflt = default_truncation(&m, &c);
    let t = Truncation::new(cli.ddeg.or(b.ddeg).unwrap_or(dflt.ddeg), cli.ldeg.or(b.ldeg).unwrap_or(dflt.ldeg));
    let solved = if explicit {
        solve_coboundary(&m, &c, t)
    } else {
        solve_coboundary_escalating(&m, &c, t)
    };
    let bm = &s.file.cochains[&name].bimodule;
    match solved {
        Ok(psi) => {
            let mut rep = Report::new("cocycle coboundary", Verdict::Pass);
            rep.witnesses.cochains.insert(format!("psi_{name}"), ss::cochain_spec(&m, &psi, bm));
            Ok(rep)
        }
        Err(HochschildError::NotACocycle) => {
            let mut rep = Report::new("cocycle coboundary", Verdict::Fail).note("not a cocycle, so not a coboundary");
            nonzero_details(&mut rep, "d", &differential(&m, &c));
            Ok(rep)
        }
        Err(HochschildError::UndecidedWithinBounds { ddeg, ldeg }) => {
            Ok(Report::undecided("cocycle coboundary", ddeg).note(format!("no preimage with ∂-degree ≤ {ddeg}, λ-degree ≤ {ldeg}")))
        }
        Err(e) => Err(s.err(format!("cochains.{name}"), e.to_string())),
    }
}

fn cohomology(cli: &Cli, r: &str, n: usize) -> Res {
    let (s, name) = open(r, Kind::Bimodule)?;
    let m = s.bimodule(&name)?;
    let b = s.bounds();
    let t = Truncation::new(cli.ddeg.or(b.ddeg).unwrap_or(2), cli.ldeg.or(b.ldeg).unwrap_or(0));
    let h = truncated_cohomology_dim(&m, n, t);
    let mut rep = Report::new("cohomology", Verdict::Pass);
    rep.bound = Some(t.ddeg);
    for (k, v) in [
        ("cochains", h.cochains),
        ("cocycles", h.cocycles),
        ("coboundaries", h.coboundaries),
        ("coboundaries_in_bounds", h.coboundaries_in_bounds),
        ("quotient", h.quotient),
    ] {
        rep.quantities.insert(k.into(), v);
    }
    Ok(rep.note(format!("truncated at ∂-degree {}, λ-degree {}", t.ddeg, t.ldeg)))
}

fn ext_build(r: &str) -> Res {
    let (s, name) = open(r, Kind::Cocycle)?;
    let c = s.cocycle(&name)?;
    match build_extension(&c) {
        Ok(e) => {
            let mut rep = Report::new("ext build", Verdict::Pass);
            let spec = &s.file.cocycles[&name];
            let ename = format!("{name}_E");
            rep.witnesses.algebras.insert(ename.clone(), ss::algebra_spec(e.e()));
            rep.witnesses.extensions.insert(
                format!("{name}_ext"),
                ss::ExtensionSpec {
                    a: spec.a.clone(),
                    b: spec.b.clone(),
                    e: ename,
                    alpha: None,
                    beta: None,
                    gamma: None,
                },
            );
            Ok(rep)
        }
        Err(NonAbelianError::InvalidCocycle(r)) => Ok(Report::from_check("ext build", &r, None)),
        Err(e) => Err(s.err(format!("cocycles.{name}"), e.to_string())),
    }
}

fn extension_of(s: &Session, name: &str) -> Result<Result<Extension, Report>, InputError> {
    match s.extension(name)? {
        Ok(e) => Ok(Ok(e)),
        Err(NonAbelianError::InvalidExtension(r)) => Ok(Err(Report::from_check("", &r, Some(&format!("extensions.{name}"))))),
        Err(e) => Err(s.err(format!("extensions.{name}"), e.to_string())),
    }
}

fn ext_cocycle_of(r: &str) -> Res {
    let (s, name) = open(r, Kind::Extension)?;
    let e = match extension_of(&s, &name)? {
        Ok(e) => e,
        Err(rep) => return Ok(Report { command: "ext cocycle-of".into(), ..rep }),
    };
    let c = cocycle_of_extension(&e);
    let spec = &s.file.extensions[&name];
    let mut rep = Report::new("ext cocycle-of", Verdict::Pass);
    rep.witnesses.cocycles.insert(format!("{name}_cocycle"), ss::cocycle_spec(&c, &spec.a, &spec.b));
    Ok(rep)
}

/// Default ∂-degree bound: the largest ∂-degree in the structure plus two.
fn default_degree(algebras: &[&ConformalAlgebra], maps: &[&CdLinearMap]) -> u32 {
    let a = algebras.iter().map(|a| a.partial_degree()).max().unwrap_or(0);
    let m = maps.iter().filter_map(|m| m.partial_degree()).max().unwrap_or(0);
    a.max(m) + 2
}

fn ext_equivalent(cli: &Cli, r1: &str, r2: &str) -> Res {
    let (s1, n1) = open(r1, Kind::Cocycle)?;
    let (s2, n2) = open(r2, Kind::Cocycle)?;
    let (c1, c2) = (s1.cocycle(&n1)?, s2.cocycle(&n2)?);
    if !c1.same_pair(&c2) {
        return Err(s2.err(format!("cocycles.{n2}"), "the two cocycles are over different (A, B)"));
    }
    for (s, n, c) in [(&s1, &n1, &c1), (&s2, &n2, &c2)] {
        let rep = check_cocycle(c);
        if !rep.passed() {
            return Ok(Report::from_check("ext equivalent", &rep, Some(&format!("{}#{n}", s.path.display()))));
        }
    }
    let deg = cli.ddeg.or(s1.bounds().ddeg).unwrap_or_else(|| default_degree(&[c1.a(), c1.b()], &[]));
    match solve_equivalence(&c1, &c2, deg) {
        Ok(Some(w)) => {
            let mut rep = Report::new("ext equivalent", Verdict::Pass);
            rep.bound = Some(deg);
            rep.witnesses.maps.insert("delta".into(), ss::matrix_spec(&w.delta));
            Ok(rep)
        }
        Ok(None) => {
            let mut rep = Report::new("ext equivalent", Verdict::Fail).note("a residual coordinate does not depend on δ");
            if let Some((id, t)) = equivalence_obstruction(&c1, &c2) {
                let zero = CdLinearMap::zero(c1.a().rank(), c1.b().rank());
                let res = equivalence_residuals(&c1, &c2, &zero);
                let k = ["coh6", "coh7", "coh8"].iter().position(|x| *x == id).unwrap_or(0);
                rep.details.push(detail(None, id, &t, res[k].get(&t)));
            }
            Ok(rep)
        }
        Err(NonAbelianError::UndecidedWithinBounds { degree }) => Ok(Report::undecided("ext equivalent", degree)),
        Err(NonAbelianError::NoRationalWitness) => {
            Ok(Report::undecided("ext equivalent", deg).note("solvable over the algebraic closure, no rational witness found"))
        }
        Err(e) => Err(s1.err(format!("cocycles.{n1}"), e.to_string())),
    }
}

fn mc_check(r: &str) -> Res {
    let (s, name) = open(r, Kind::Cocycle)?;
    let c = s.cocycle(&name)?;
    let rep = Ambient::of(&c).mc_check(&embed_cocycle(&c));
    Ok(Report::from_check("mc check", &rep, None))
}

fn mc_gauge(cli: &Cli, r: &str, xi: Option<&str>) -> Res {
    let (s, name) = open(r, Kind::Cocycle)?;
    let c = s.cocycle(&name)?;
    let (ra, rb) = (c.a().rank(), c.b().rank());
    let xi = match xi {
        Some(m) => s.matrix_of(&ss::MapRef::Name(m.to_string()), ra, rb, "--xi")?,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let deg = cli.ddeg.unwrap_or(1);
            cochain_map(&random_cochain(&mut rng, vec![rb], ra, Truncation::new(deg, 0), 0.5))
        }
    };
    let amb = Ambient::of(&c);
    let g = amb
        .gauge_transform(&embed_cocycle(&c), &GaugeParameter { xi: xi.clone() })
        .map_err(|e| s.err(format!("cocycles.{name}"), e.to_string()))?;
    let mc = amb.mc_check(&embed_cocycle(&c));
    if !mc.passed() {
        return Ok(Report::from_check("mc gauge", &mc, None).note("the input is not a Maurer–Cartan element"));
    }
    let out = amb.extract(&g).map_err(|e| s.err(format!("cocycles.{name}"), e.to_string()))?;
    let direct = equivalence_transform(&c, &xi).map_err(|e| s.err(format!("cocycles.{name}"), e.to_string()))?;
    let mut rep = Report::from_check("mc gauge", &amb.mc_check(&g), None);
    if out != direct {
        rep.verdict = Verdict::Fail;
        rep.notes.push("gauge action and direct transform disagree".into());
    }
    let spec = &s.file.cocycles[&name];
    rep.witnesses.maps.insert("xi".into(), ss::matrix_spec(&xi));
    rep.witnesses.cocycles.insert(format!("{name}_gauged"), ss::cocycle_spec(&out, &spec.a, &spec.b));
    Ok(rep)
}

fn wells(cli: &Cli, args: &WellsArgs, der: bool) -> Res {
    let cmd = if der { "wells der" } else { "wells aut" };
    let (se, en) = open(&args.extension, Kind::Extension)?;
    let (sp, pn) = open(&args.pair, Kind::Pair)?;
    let e = match extension_of(&se, &en)? {
        Ok(e) => e,
        Err(rep) => return Ok(Report { command: cmd.into(), ..rep }),
    };
    let (ra, rb) = (e.a().rank(), e.b().rank());
    let (ma, mb) = sp.pair(&pn, ra, rb)?;
    let need = |m: Option<CdLinearMap>, side: &str| {
        m.ok_or_else(|| sp.err(format!("pairs.{pn}"), format!("missing '{side}'")))
    };
    let fill = |m: Option<CdLinearMap>, n: usize| m.unwrap_or_else(|| if der { CdLinearMap::zero(n, n) } else { CdLinearMap::identity(n) });
    let (ga, gb) = match args.partial {
        Some(Side::A) => (need(ma, "a")?, fill(None, rb)),
        Some(Side::B) => (fill(None, ra), need(mb, "b")?),
        None => (need(ma, "a")?, need(mb, "b")?),
    };
    let deg = cli
        .ddeg
        .or(se.bounds().ddeg)
        .unwrap_or_else(|| default_degree(&[e.e()], &[&ga, &gb]));
    let bad_pair = |err: WellsError| sp.err(format!("pairs.{pn}"), err.to_string());
    let class = if der {
        let d = DerPair::new(&ga, &gb, e.a(), e.b()).map_err(bad_pair)?;
        match wells_der(&d, &e, deg) {
            Ok(w) => {
                let mut rep = wells_report(cmd, &w, deg);
                if let Some(f) = w.witness() {
                    let lift = extend_derivation(&d, f, &e).map_err(|x| se.err(format!("extensions.{en}"), x.to_string()))?;
                    rep.witnesses.maps.insert("f".into(), ss::matrix_spec(f));
                    rep.witnesses.maps.insert("derivation".into(), ss::matrix_spec(&lift.underlying));
                }
                return Ok(rep);
            }
            Err(WellsError::NotInG(r)) => {
                return Ok(Report::from_check(cmd, &r, None).note("the pair is not in g(A, B), so it does not extend"))
            }
            Err(x) => return Err(se.err(format!("extensions.{en}"), x.to_string())),
        }
    } else {
        let p = AutPair::new(&ga, &gb, e.a(), e.b()).map_err(bad_pair)?;
        let w = match args.partial {
            Some(Side::A) => wells_a(&ga, &e, deg),
            Some(Side::B) => wells_b(&gb, &e, deg),
            None => wells_aut(&p, &e, deg),
        }
        .map_err(|x| se.err(format!("extensions.{en}"), x.to_string()))?;
        (p, w)
    };
    let (p, w) = class;
    let mut rep = wells_report(cmd, &w, deg);
    if let Some(omega) = w.witness() {
        let lift = induce_automorphism(&p, omega, &e).map_err(|x| se.err(format!("extensions.{en}"), x.to_string()))?;
        rep.witnesses.maps.insert("omega".into(), ss::matrix_spec(omega));
        rep.witnesses.maps.insert("automorphism".into(), ss::matrix_spec(&lift.underlying));
    }
    Ok(rep)
}

fn wells_report(cmd: &str, w: &WellsClass, deg: u32) -> Report {
    match &w.status {
        ZeroStatus::Zero(_) => {
            let mut r = Report::new(cmd, Verdict::Pass);
            r.bound = Some(deg);
            r
        }
        ZeroStatus::NonZero(Certificate::Obstruction { identity, tuple }) => {
            let mut r = Report::new(cmd, Verdict::Fail).note("the Wells class is nonzero");
            let k = ["coh6", "coh7", "coh8"].iter().position(|x| x == identity).unwrap_or(0);
            let rep = &w.representative[k.min(w.representative.len() - 1)];
            let v = rep.get(tuple);
            if v.is_zero() {
                r.details.extend(first_nonzero(identity, rep));
            } else {
                r.details.push(detail(None, identity, tuple, v));
            }
            r
        }
        ZeroStatus::NonZero(Certificate::NoWitnessWithin { degree }) => {
            Report::undecided(cmd, *degree).note(format!("no witness with ∂-degree ≤ {degree}"))
        }
        ZeroStatus::Undecided => Report::undecided(cmd, 2 * deg.max(1)),
    }
}

fn crossed_check(r: &str) -> Res {
    let (s, name) = open(r, Kind::Crossed)?;
    Ok(Report::from_check("crossed check", &check_crossed(&s.crossed(&name)?), None))
}

fn crossed_to(r: &str) -> Res {
    let (s, name) = open(r, Kind::Crossed)?;
    let c = s.crossed(&name)?;
    let rep = check_crossed(&c);
    if !rep.passed() {
        return Ok(Report::from_check("crossed to-shac", &rep, None));
    }
    let mut out = Report::new("crossed to-shac", Verdict::Pass);
    out.witnesses.shacs.insert(format!("{name}_shac"), ss::shac_spec(&crossed_to_shac(&c)));
    Ok(out)
}

fn crossed_from(r: &str) -> Res {
    let (s, name) = open(r, Kind::Shac)?;
    let t = s.shac(&name)?;
    let rep = check_twoterm(&t);
    if !rep.passed() {
        return Ok(Report::from_check("crossed from-shac", &rep, None));
    }
    match shac_to_crossed(&t) {
        Ok(c) => {
            let mut out = Report::new("crossed from-shac", Verdict::Pass);
            let (x, y) = (format!("{name}_X"), format!("{name}_Y"));
            out.witnesses.algebras.insert(x.clone(), ss::algebra_spec(c.x()));
            out.witnesses.algebras.insert(y.clone(), ss::algebra_spec(c.y()));
            out.witnesses.crossed_modules.insert(format!("{name}_crossed"), ss::crossed_spec(&c, &x, &y));
            Ok(out)
        }
        Err(HomotopyError::NotStrict) => {
            let mut out = Report::new("crossed from-shac", Verdict::Fail).note("m³ is nonzero");
            out.details.extend(first_nonzero("strict", t.m3()));
            Ok(out)
        }
        Err(e) => Err(s.err(format!("shacs.{name}"), e.to_string())),
    }
}

fn crossed_theta(r: &str) -> Res {
    let (s, name) = open(r, Kind::CrossedExtension)?;
    let loc = format!("crossed_extensions.{name}");
    let x = match s.crossed_extension(&name)? {
        Ok(x) => x,
        Err(
            HomotopyError::InvalidCrossedModule(r) | HomotopyError::InvalidExtension(r) | HomotopyError::InvalidSections(r),
        ) => return Ok(Report::from_check("crossed theta", &r, Some(&loc))),
        Err(e) => return Err(s.err(loc, e.to_string())),
    };
    match crossed_extension_theta(&x) {
        Ok(class) => {
            let mut rep = Report::new("crossed theta", Verdict::Pass);
            let m = &s.file.crossed_extensions[&name].m;
            rep.witnesses.cochains.insert(format!("{name}_theta"), ss::cochain_spec(x.m(), &class.f, m));
            Ok(rep)
        }
        Err(HomotopyError::VerificationFailed(r)) => Ok(Report::from_check("crossed theta", &r, Some(&loc))),
        Err(e) => Err(s.err(loc, e.to_string())),
    }
}

fn shac_check(r: &str) -> Res {
    let (s, name) = open(r, Kind::Shac)?;
    Ok(Report::from_check("shac check", &check_twoterm(&s.shac(&name)?), None))
}

fn shac_to_cocycle(r: &str) -> Res {
    let (s, name) = open(r, Kind::Shac)?;
    let t = s.shac(&name)?;
    let rep = check_twoterm(&t);
    if !rep.passed() {
        return Ok(Report::from_check("shac to-cocycle", &rep, None));
    }
    match skeletal_to_cocycle(&t) {
        Ok((a, m, z)) => {
            let mut out = Report::new("shac to-cocycle", Verdict::Pass);
            let (an, mn) = (format!("{name}_A"), format!("{name}_M"));
            out.witnesses.algebras.insert(an.clone(), ss::algebra_spec(&a));
            out.witnesses.bimodules.insert(mn.clone(), ss::bimodule_spec(&m, &an));
            out.witnesses.cochains.insert(format!("{name}_m3"), ss::cochain_spec(&m, &z, &mn));
            Ok(out)
        }
        Err(HomotopyError::NotSkeletal) => {
            let mut out = Report::new("shac to-cocycle", Verdict::Fail).note("fd is nonzero");
            let fd = t.fd();
            if let Some(j) = (0..fd.cols()).find(|&j| !fd.column(j).is_zero()) {
                out.details.push(detail(None, "skeletal", &[j], &fd.column(j)));
            }
            Ok(out)
        }
        Err(e) => Err(s.err(format!("shacs.{name}"), e.to_string())),
    }
}

fn shac_from_cocycle(r: &str) -> Res {
    let (s, name) = open(r, Kind::Cochain)?;
    let (m, z) = s.cochain(&name)?;
    match cocycle_to_skeletal(&m, &z) {
        Ok(t) => {
            let mut out = Report::new("shac from-cocycle", Verdict::Pass);
            out.witnesses.shacs.insert(format!("{name}_shac"), ss::shac_spec(&t));
            Ok(out)
        }
        Err(HomotopyError::NotACocycle) => {
            let mut out = Report::new("shac from-cocycle", Verdict::Fail).note("not a cocycle");
            nonzero_details(&mut out, "d", &differential(&m, &z));
            Ok(out)
        }
        Err(HomotopyError::ShapeMismatch) => Err(s.err(format!("cochains.{name}"), "expected a 3-cochain")),
        Err(e) => Err(s.err(format!("cochains.{name}"), e.to_string())),
    }
}
