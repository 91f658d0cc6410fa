use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::json;
use thiserror::Error;
use ultrazero::archipelago::{ball_audit, build_archipelago, fingerprint_compare, island_profile};
use ultrazero::groups::{
    d_filtration, group_ball, group_isometric_embedding, isometry_defect, m0_distortion_check, m0_encode,
    protasov_equivalent, sylow_number, CyclicSumSpec, GroupElement,
};
use ultrazero::io::{
    self, indices_of, parse_rational, BallAuditFile, CertificateFile, EmbeddingFile, FingerprintFile,
    IoError, M0CheckFile, MetricFile, PartitionFile, PlanFile, ProfileFile, ProtasovFile, RetractionFile,
    SubdominantFile, SylowFile, UltraCheckReport, UniversalFile, ValidateReport, VerificationReport,
};
use ultrazero::lomega::{embed_3n_valued, embed_ultrametric};
use ultrazero::metric::{is_ultrametric, quantize_3adic};
use ultrazero::pipeline::embed_universal;
use ultrazero::retract::{default_delta, lipschitz_retraction};
use ultrazero::scale::{dim0_certificate, s_components, subdominant_ultrametric, verify_scale_bounds};
use ultrazero::{MetricSpace, Rational, ThreePower};

use crate::{human, Command, EmbedMode, Report};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{0}")]
    Io(#[from] IoError),
    #[error("{0}")]
    Input(String),
}

fn input(msg: impl std::fmt::Display) -> CliError {
    CliError::Input(msg.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|source| CliError::Read {
            path: "<stdin>".into(),
            source,
        })?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })
}

fn metric_file(path: &Path) -> Result<MetricFile, CliError> {
    Ok(io::read_metric_file(&read(path)?)?)
}

fn load_space(path: &Path) -> Result<MetricSpace, CliError> {
    let f = metric_file(path)?;
    f.to_space().map_err(|e| input(format!("invalid metric: {}", e.render(&f.labels))))
}

fn load_spec(path: &Path) -> Result<CyclicSumSpec, CliError> {
    Ok(io::read_group_spec(&read(path)?)?)
}

fn rational(s: &str) -> Result<Rational, CliError> {
    Ok(parse_rational(s)?)
}

fn list(s: &str) -> Vec<String> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(String::from).collect()
}

fn digits(s: &str) -> Result<Vec<u64>, CliError> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    list(inner)
        .iter()
        .map(|t| t.parse::<u64>().map_err(|_| input(format!("bad digit {t:?}"))))
        .collect()
}

fn to_json<T: Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("wire types serialize")
}

fn done<T: Serialize>(x: &T, human: String, failed: bool) -> Result<Report, CliError> {
    Ok(Report {
        json: to_json(x),
        human,
        failed,
    })
}

pub fn run(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Validate { file } => {
            let f = metric_file(file)?;
            let report = match f.to_space() {
                Ok(s) => ValidateReport {
                    valid: true,
                    points: s.len(),
                    error: None,
                },
                Err(e) => ValidateReport {
                    valid: false,
                    points: f.labels.len(),
                    error: Some(e.render(&f.labels)),
                },
            };
            let h = human::validate(&report);
            done(&report, h, !report.valid)
        }
        Command::UltraCheck { file } => {
            let s = load_space(file)?;
            let report = UltraCheckReport::new(&s, &is_ultrametric(&s));
            let h = human::ultra_check(&report);
            done(&report, h, !report.ultrametric)
        }
        Command::Components { file, scale } => {
            let s = load_space(file)?;
            let p = s_components(&s, &rational(scale)?).map_err(input)?;
            let f = PartitionFile::new(&s, &p);
            let h = human::partition(&f);
            done(&f, h, false)
        }
        Command::Subdominant { file } => {
            let s = load_space(file)?;
            let f = SubdominantFile::new(&subdominant_ultrametric(&s));
            let h = human::matrix(&f.labels, &f.dist);
            done(&f, h, false)
        }
        Command::Dim0Cert { file } => {
            let s = load_space(file)?;
            let f = CertificateFile::new(&dim0_certificate(&s));
            let h = human::certificate(&f);
            done(&f, h, false)
        }
        Command::VerifyBounds { file, certificate } => {
            let s = load_space(file)?;
            let cert = match certificate {
                Some(p) => serde_json::from_str::<CertificateFile>(&read(p)?)
                    .map_err(IoError::from)?
                    .to_certificate(),
                None => dim0_certificate(&s),
            };
            let report = verify_scale_bounds(&s, &subdominant_ultrametric(&s), &cert).map_err(input)?;
            let f = VerificationReport::new(&s, &report);
            let h = human::verification(&f);
            done(&f, h, !f.pass)
        }
        Command::Quantize { file } => {
            let s = load_space(file)?;
            let out = quantize_3adic(&s).map_err(|e| input(format!("{e}")))?;
            let f = MetricFile::from_space(&out);
            let h = human::matrix(&f.labels, &f.dist);
            done(&f, h, false)
        }
        Command::EmbedLomega { file, mode } => {
            let s = load_space(file)?;
            let all_powers = s.pairs().all(|(i, j)| ThreePower::exact(s.d(i, j)).is_some());
            let e = match mode {
                EmbedMode::Isometric => embed_3n_valued(&s),
                EmbedMode::Auto if all_powers => embed_3n_valued(&s),
                _ => embed_ultrametric(&s),
            }
            .map_err(|e| input(format!("{e}")))?;
            let digest = e.verify().map_err(|e| input(format!("{e}")))?;
            let f = EmbeddingFile::new(&e, &digest);
            let h = human::embedding(&f);
            done(&f, h, false)
        }
        Command::EmbedUniversal { file } => {
            let s = load_space(file)?;
            let u = embed_universal(&s).map_err(|e| input(format!("{e}")))?;
            let f = UniversalFile::new(&s, &u);
            let h = human::universal(&f);
            done(&f, h, !f.pass)
        }
        Command::Retract {
            file,
            subset,
            lambda,
            delta,
            base,
        } => {
            let space = metric_file(file)?.to_pointed(base.as_deref())?;
            let subset = indices_of(space.space(), &list(subset))?;
            let lambda = rational(lambda)?;
            let delta = match delta {
                Some(d) => rational(d)?,
                None => default_delta(&lambda).map_err(input)?,
            };
            let r = lipschitz_retraction(&space, &subset, &lambda, &delta).map_err(input)?;
            let f = RetractionFile::new(&r);
            let failed = !(f.fixes_subset && f.audited_constant.0 <= f.lambda.0);
            let h = human::retraction(&f);
            done(&f, h, failed)
        }
        Command::GroupDist { spec, p, q } => {
            let spec = load_spec(spec)?;
            let p = GroupElement::new(digits(p)?);
            let q = GroupElement::new(digits(q)?);
            let d = d_filtration(&spec, &p, &q).map_err(input)?;
            let out = json!({ "p": p.digits(), "q": q.digits(), "distance": d });
            Ok(Report {
                json: out.to_string(),
                human: format!("d({p}, {q}) = {d}"),
                failed: false,
            })
        }
        Command::GroupBall { spec, depth } => {
            let spec = load_spec(spec)?;
            let ball = group_ball::<Rational>(&spec, *depth).map_err(input)?;
            let f = MetricFile::from_space(&ball.space);
            let h = human::matrix(&f.labels, &f.dist);
            done(&f, h, false)
        }
        Command::GroupEmbed { from, to, depth, maps } => {
            let g = load_spec(from)?;
            let h = load_spec(to)?;
            let maps = maps
                .as_deref()
                .map(|m| m.split(';').map(digits).collect::<Result<Vec<_>, _>>())
                .transpose()?;
            let e = group_isometric_embedding::<Rational>(&g, &h, *depth, maps).map_err(input)?;
            let isometric = isometry_defect(&e.source.space, &e.target.space, &e.assignment).is_none();
            let assignment: BTreeMap<&str, &str> = e
                .assignment
                .iter()
                .enumerate()
                .map(|(x, &y)| (e.source.space.label(x), e.target.space.label(y)))
                .collect();
            let out = json!({
                "source_points": e.source.space.len(),
                "target_points": e.target.space.len(),
                "digit_maps": e.digit_maps,
                "assignment": assignment,
                "bijective": e.bijective,
                "isometric": isometric,
            });
            let mut text = format!(
                "{} -> {} points, bijective: {}, isometric: {}\n",
                e.source.space.len(),
                e.target.space.len(),
                e.bijective,
                isometric
            );
            for (a, b) in &assignment {
                text.push_str(&format!("  {a} -> {b}\n"));
            }
            Ok(Report {
                json: out.to_string(),
                human: text.trim_end().to_string(),
                failed: !isometric,
            })
        }
        Command::Sylow { spec, prime } => {
            let spec = load_spec(spec)?;
            let s = sylow_number(&spec, *prime).map_err(input)?;
            let f = SylowFile::new(*prime, &s);
            let h = format!("{prime}-Sylow number of {spec}: {}", f.value);
            done(&f, h, false)
        }
        Command::Protasov { left, right } => {
            let g = load_spec(left)?;
            let h = load_spec(right)?;
            let f = ProtasovFile::new(&protasov_equivalent(&g, &h));
            let text = human::protasov(&g, &h, &f);
            done(&f, text, !f.equivalent)
        }
        Command::M0Encode { digits: d, spec } => {
            let spec = match spec {
                Some(p) => load_spec(p)?,
                None => CyclicSumSpec::infinite_power(2).expect("valid spec"),
            };
            let p = GroupElement::new(digits(d)?);
            let value = m0_encode(&spec, &p).map_err(input)?;
            let ternary = human::ternary(value);
            let out = json!({ "digits": p.digits(), "value": value.to_string(), "ternary": ternary });
            Ok(Report {
                json: out.to_string(),
                human: format!("f({p}) = {value} (ternary {ternary})"),
                failed: false,
            })
        }
        Command::M0Check { max_len } => {
            let r = m0_distortion_check(*max_len).map_err(input)?;
            let f = M0CheckFile::new(&r);
            let h = human::m0_check(&f);
            done(&f, h, !f.pass)
        }
        Command::ArchipelagoBuild { plan } => {
            let p: PlanFile = serde_json::from_str(&read(plan)?).map_err(IoError::from)?;
            let a = build_archipelago::<Rational>(&p.lambda, &p.plan, p.strict).map_err(input)?;
            let f = MetricFile::from_archipelago(&a);
            let h = human::archipelago(&f);
            done(&f, h, false)
        }
        Command::ArchipelagoProfile { file, base } => {
            let space = metric_file(file)?.to_pointed(base.as_deref())?;
            let (f, failed) = match island_profile(&space) {
                Ok(p) => (ProfileFile::new(&p), false),
                Err(e) => (ProfileFile::degraded(space.space(), &e), true),
            };
            let h = human::profile(&f);
            done(&f, h, failed)
        }
        Command::ArchipelagoCompare { left, right } => {
            let a = load_profile(left)?;
            let b = load_profile(right)?;
            let f = FingerprintFile::new(&fingerprint_compare(&a.to_profile(), &b.to_profile()));
            let h = human::fingerprint(&f);
            done(&f, h, false)
        }
        Command::BallAudit { file, radii, centers } => {
            let arch = metric_file(file)?.to_archipelago()?;
            let s = arch.space.space();
            let radii: Vec<Rational> = if radii.is_empty() {
                s.distinct_distances()
            } else {
                radii.iter().map(|r| rational(r)).collect::<Result<_, _>>()?
            };
            let centers: Vec<usize> = if centers.is_empty() {
                (0..s.len()).collect()
            } else {
                indices_of(s, centers)?
            };
            let samples: Vec<(usize, Rational)> = centers
                .iter()
                .flat_map(|&c| radii.iter().map(move |r| (c, r.clone())))
                .collect();
            let f = BallAuditFile::new(s, &ball_audit(&arch, &samples));
            let h = human::ball_audit(&f);
            done(&f, h, !f.pass)
        }
    }
}

/// A profile file, or a metric file whose profile is extracted.
fn load_profile(path: &Path) -> Result<ProfileFile, CliError> {
    let text = read(path)?;
    if let Ok(m) = io::read_metric_file(&text) {
        let space = m.to_pointed(None)?;
        return island_profile(&space)
            .map(|p| ProfileFile::new(&p))
            .map_err(|e| input(format!("{}: {e}", path.display())));
    }
    let p: ProfileFile = serde_json::from_str(&text).map_err(IoError::from)?;
    Ok(p)
}
