use std::io::Write;
use std::path::Path;

use k3tk::ade::{self, parse_table1, AdeType, StabilizerRecord};
use k3tk::data::{self, DataSource};
use k3tk::enumerate::{
    self, candidate_order, check_constraints, enumerate_over, group_by_order, EnumOptions,
    ListEntry, SingConfig,
};
use k3tk::f2::{self, AffineConstants};
use k3tk::perm::{GroupFile, PermGroup};
use k3tk::{Error, Rational};

use crate::{line, Cli, Command, Format, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let source = DataSource::from_env();
    let result = match &cli.command {
        Command::Enumerate {
            k_range,
            no_square_filter,
            no_rank_filter,
            verify,
            format,
        } => {
            let opts = EnumOptions {
                k_range: k_range.0..=k_range.1,
                require_rank20: !no_rank_filter,
                require_nonsquare: !no_square_filter,
            };
            cmd_enumerate(&source, &opts, *verify, *format, out)
        }
        Command::CheckConfig { config, order } => cmd_check_config(config, *order, out),
        Command::Group {
            path,
            order,
            orbits,
            histogram,
            mu,
            chain,
            cap,
            allow_wild,
            expect,
        } => {
            let req = GroupRequest {
                order: *order,
                orbits: *orbits,
                histogram: *histogram,
                mu: *mu,
                chain: chain.clone(),
                cap: *cap,
                allow_wild: *allow_wild,
                expect: expect.clone(),
            };
            cmd_group(&source, path, &req, out, err)
        }
        Command::Table1 { format } => cmd_table1(&source, *format, out),
        Command::VerifyConstructions { s4_census } => cmd_constructions(&source, *s4_census, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let code = match e {
                Error::Relation(_) | Error::WildOrders(_) => EXIT_MISMATCH,
                _ => EXIT_USAGE,
            };
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}

type CmdResult = k3tk::Result<u8>;

fn load_table1(source: &DataSource) -> k3tk::Result<Vec<StabilizerRecord>> {
    parse_table1(&source.table1()?)
}

fn cmd_enumerate(
    source: &DataSource,
    opts: &EnumOptions,
    verify: bool,
    format: Format,
    out: &mut dyn Write,
) -> CmdResult {
    let alphabet = load_table1(source)?;
    let entries = enumerate_over(&alphabet, opts);
    match format {
        Format::Records => {
            for e in &entries {
                line(out, record(e));
            }
        }
        Format::Text => {
            let groups = group_by_order(&entries);
            line(out, format!("{:<16} {:>7}  Configurations", "Order", "N"));
            for (n, configs) in &groups {
                let list: Vec<String> = configs.iter().map(|c| c.concat()).collect();
                line(
                    out,
                    format!(
                        "{:<16} {:>7}  {}",
                        ade::format_factorization(*n as u128),
                        n,
                        list.join(", ")
                    ),
                );
            }
            line(
                out,
                format!("{} configurations, {} orders", entries.len(), groups.len()),
            );
        }
    }
    if !verify {
        return Ok(EXIT_OK);
    }
    let reference = enumerate::parse_table2(&source.table2()?)?;
    let diff = enumerate::diff_entries(&entries, &reference);
    for e in &diff.missing {
        line(out, format!("missing\t{}", record(e)));
    }
    for e in &diff.extra {
        line(out, format!("extra\t{}", record(e)));
    }
    if diff.is_empty() {
        line(out, format!("verify: ok ({} entries match)", reference.len()));
        Ok(EXIT_OK)
    } else {
        line(
            out,
            format!(
                "verify: MISMATCH ({} missing, {} extra)",
                diff.missing.len(),
                diff.extra.len()
            ),
        );
        Ok(EXIT_MISMATCH)
    }
}

fn record(e: &ListEntry) -> String {
    format!("{}\t{}\t{}", e.order, e.order_string(), e.config.comma())
}

fn cmd_check_config(text: &str, order: Option<u64>, out: &mut dyn Write) -> CmdResult {
    let types = ade::parse_multiset(text)?;
    let config = SingConfig::new(types)?;
    let candidate = candidate_order(&config);
    let orders: Vec<String> = config.orders().iter().map(u64::to_string).collect();
    let disc = config.disc_product();
    line(out, format!("config: {}", config.concat()));
    line(out, format!("k: {}", config.k()));
    line(out, format!("rank: {}", config.rank()));
    line(out, format!("orders: {}", orders.join(",")));
    match candidate {
        Some(n) => line(
            out,
            format!("candidate N: {n} = {}", ade::format_factorization(n as u128)),
        ),
        None => line(out, "candidate N: none (24 / sum(1/o) - k + 4 is not a positive integer)"),
    }
    line(
        out,
        format!("discriminant product: {disc} = {}", ade::format_factorization(disc)),
    );
    let n = match order.or(candidate) {
        Some(n) => n,
        None => {
            line(out, "verdict: FAIL (no group order to check)");
            return Ok(EXIT_MISMATCH);
        }
    };
    line(out, format!("checking N = {n}"));
    let report = check_constraints(config.types(), n);
    for (name, ok) in report.verdicts() {
        line(out, format!("  {} {name}", if ok { "pass" } else { "FAIL" }));
    }
    if report.all_pass() {
        line(out, "verdict: pass");
        Ok(EXIT_OK)
    } else {
        line(out, "verdict: FAIL");
        Ok(EXIT_MISMATCH)
    }
}

struct GroupRequest {
    order: bool,
    orbits: bool,
    histogram: bool,
    mu: bool,
    chain: Option<Vec<usize>>,
    cap: u64,
    allow_wild: bool,
    expect: Option<String>,
}

/// Reads `path` if it exists, otherwise looks it up as a data-directory or bundled group name.
fn load_group_text(source: &DataSource, path: &Path) -> k3tk::Result<String> {
    if path.exists() {
        return data::read_file(path);
    }
    let name = path.to_string_lossy();
    let name = if name.ends_with(".grp") {
        name.into_owned()
    } else {
        format!("{name}.grp")
    };
    source.group(&name).map_err(|e| match e {
        Error::MissingEntry(_) => Error::Io {
            path: path.display().to_string(),
            message: format!(
                "no such file or bundled group (bundled: {})",
                data::bundled_group_names().collect::<Vec<_>>().join(", ")
            ),
        },
        other => other,
    })
}

fn cmd_group(
    source: &DataSource,
    path: &Path,
    req: &GroupRequest,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let file = GroupFile::parse(&load_group_text(source, path)?)?;
    let group = file.build()?;
    let requested = [req.order, req.orbits, req.histogram, req.mu, req.chain.is_some()]
        .iter()
        .filter(|&&b| b)
        .count();
    if req.expect.is_some() && requested != 1 {
        return Err(Error::Malformed {
            line: 0,
            reason: "--expect needs exactly one of --order, --orbits, --histogram, --mu, --chain"
                .into(),
        });
    }
    let show_order = req.order || requested == 0;
    let show_orbits = req.orbits || requested == 0;

    line(out, format!("name: {}", file.name));
    line(out, format!("degree: {}", file.degree));
    let mut values: Vec<String> = Vec::new();
    if show_order {
        let v = group.order().to_string();
        line(out, format!("order: {v}"));
        values.push(v);
    }
    if show_orbits {
        let v = format_orbits(&group);
        line(out, format!("orbits: {v}"));
        values.push(v);
    }
    if let Some(points) = &req.chain {
        let zero_based = points
            .iter()
            .map(|&p| {
                p.checked_sub(1)
                    .filter(|&q| q < group.degree())
                    .ok_or_else(|| Error::Permutation(format!("point {p} out of range")))
            })
            .collect::<k3tk::Result<Vec<_>>>()?;
        let sizes = group.stabilizer_chain_orbits(&zero_based)?;
        let v = sizes.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        line(out, format!("chain: {v}"));
        values.push(v);
    }
    if req.histogram || req.mu {
        let report = group.mu(req.cap, req.allow_wild)?;
        if !report.wild_orders.is_empty() {
            let _ = writeln!(
                err,
                "warning: element orders above 8 present: {:?}",
                report.wild_orders
            );
        }
        if req.histogram {
            let v = report.histogram.to_string();
            line(out, format!("histogram: {v}"));
            values.push(v);
        }
        if req.mu {
            let v = format_rational(report.mu);
            line(out, format!("mu: {v}"));
            values.push(v);
        }
    }
    if let Some(want) = &req.expect {
        let got = &values[0];
        if normalize(got) == normalize(want) {
            line(out, "expect: ok");
        } else {
            line(out, format!("expect: MISMATCH (expected {want}, got {got})"));
            return Ok(EXIT_MISMATCH);
        }
    }
    Ok(EXIT_OK)
}

fn normalize(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

fn format_rational(r: Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn format_orbits(group: &PermGroup) -> String {
    group
        .orbit_partition()
        .iter()
        .map(|o| {
            let pts: Vec<String> = o.iter().map(|p| (p + 1).to_string()).collect();
            format!("{{{}}}", pts.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_table1(source: &DataSource, format: Format, out: &mut dyn Write) -> CmdResult {
    let records = load_table1(source)?;
    let mut bad = 0;
    if format == Format::Text {
        line(
            out,
            format!("{:<5} {:<6} {:>4} {:>3}  {:<10} {:>3}  check", "type", "group", "o", "c", "disc", "d"),
        );
    }
    for r in &records {
        let problems = record_problems(r);
        match format {
            Format::Records => line(out, r.to_record_line()),
            Format::Text => line(
                out,
                format!(
                    "{:<5} {:<6} {:>4} {:>3}  {:<10} {:>3}  {}",
                    r.ade.to_string(),
                    r.group_name,
                    r.o_x,
                    r.c_x,
                    r.disc_invariants.to_string(),
                    r.d_x,
                    if problems.is_empty() { "ok".to_string() } else { problems.join("; ") }
                ),
            ),
        }
        if !problems.is_empty() {
            bad += 1;
        }
    }
    if format == Format::Records {
        for r in &records {
            for p in record_problems(r) {
                line(out, format!("# {}: {p}", r.ade));
            }
        }
    }
    if bad == 0 {
        Ok(EXIT_OK)
    } else {
        line(out, format!("# {bad} record(s) disagree with the computed values"));
        Ok(EXIT_MISMATCH)
    }
}

/// Differences between a table record and the values computed from its root lattice.
fn record_problems(r: &StabilizerRecord) -> Vec<String> {
    let mut problems = Vec::new();
    let disc = ade::discriminant_group(r.ade);
    if disc != r.disc_invariants {
        problems.push(format!("disc is {disc}, table says {}", r.disc_invariants));
    }
    let o = AdeType::stabilizer_order(r.ade);
    if o != r.o_x {
        problems.push(format!("o is {o}, table says {}", r.o_x));
    }
    problems
}

fn cmd_constructions(source: &DataSource, census: bool, out: &mut dyn Write) -> CmdResult {
    let consts = AffineConstants::parse(&source.affine()?)?;
    let mut failures = 0;
    let mut check = |out: &mut dyn Write, name: &str, result: k3tk::Result<String>| match result {
        Ok(detail) => line(out, format!("pass  {name}: {detail}")),
        Err(e) => {
            failures += 1;
            line(out, format!("FAIL  {name}: {e}"));
        }
    };

    check(out, "O48", (|| {
        let g = f2::build_o48(&consts)?;
        let order = g.order_u64().unwrap_or(0);
        if order != 48 {
            return Err(Error::Relation(format!("order {order}, expected 48")));
        }
        let report = g.mu(k3tk::perm::DEFAULT_CAP, false)?;
        let involutions = report.histogram.count(2);
        if involutions != 1 {
            return Err(Error::Relation(format!("{involutions} involutions, expected 1")));
        }
        if report.mu != Rational::from_integer(4) {
            return Err(Error::Relation(format!("mu = {}, expected 4", report.mu)));
        }
        Ok(format!("order 48, one involution, mu 4, orbits {}", shape_string(&orbit_shape(&g))))
    })());

    check(out, "O48:2", (|| {
        let g = f2::build_o48_2(&consts)?;
        let sub = f2::build_o48_in_o48_2(&consts)?;
        let sub_order = sub.order_u64().unwrap_or(0);
        if sub_order != 48 {
            return Err(Error::Relation(format!("<t_b x, t_c y> has order {sub_order}, expected 48")));
        }
        for s in sub.generators() {
            if !g.contains(s)? {
                return Err(Error::Relation("O48 generator outside O48:2".into()));
            }
        }
        Ok(format!("order 96, contains an O48, orbits {}", shape_string(&orbit_shape(&g))))
    })());

    check(out, "S4 action of the O48 pair", shape_check(consts.o48_x, consts.o48_y, &[1, 6, 8]));
    check(out, "S4 action of the O48:2 pair", shape_check(consts.o96_x, consts.o96_y, &[1, 2, 12]));

    let found = f2::classify_s4_shapes();
    check(out, "S4 census", {
        let missing: Vec<&[usize]> = [&[1usize, 6, 8][..], &[1, 2, 12][..]]
            .into_iter()
            .filter(|s| !found.contains(s))
            .collect();
        if missing.is_empty() {
            Ok(format!("{} shapes, both constructions' shapes present", found.shapes.len()))
        } else {
            Err(Error::Relation(format!("shapes {missing:?} not realised")))
        }
    });
    if census {
        for (shape, count) in &found.shapes {
            line(out, format!("  {:<24} {count}", shape_string(shape)));
        }
    }

    if failures == 0 {
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_MISMATCH)
    }
}

fn shape_check(x: f2::F2Mat4, y: f2::F2Mat4, want: &[usize]) -> k3tk::Result<String> {
    if !f2::verify_s4_presentation(x, y) {
        return Err(Error::Relation(format!(
            "x = {x}, y = {y} do not satisfy x^4 = y^2 = (xy)^3 = 1"
        )));
    }
    let shape = f2::linear_orbit_shape(&[x, y]);
    if shape != want {
        return Err(Error::Relation(format!(
            "orbit shape {}, expected {}",
            shape_string(&shape),
            shape_string(want)
        )));
    }
    Ok(format!("orbits on nonzero vectors {}", shape_string(&shape)))
}

fn orbit_shape(g: &PermGroup) -> Vec<usize> {
    let mut sizes: Vec<usize> = g.orbit_partition().iter().map(Vec::len).collect();
    sizes.sort_unstable();
    sizes
}

fn shape_string(shape: &[usize]) -> String {
    let parts: Vec<String> = shape.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}
