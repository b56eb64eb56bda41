use std::sync::Arc;

use proptest::prelude::*;

use novikov_cli::corpus;
use novikov_cli::input::{load, MorseFile, MORSE_SCHEMA};
use novikov_cli::{run, Coeffs, Command, Format, JobSpec, EXIT_NOT_A_COMPLEX};
use novikov_core::morse::{examples, CriticalPoint, FlowLineRecord, MorseData};
use novikov_core::{Cutoff, DegreeForm, LatticePoint};

fn job(command: Command) -> JobSpec {
    JobSpec {
        precision: None,
        coeffs: Coeffs::Int,
        format: Format::Table,
        command,
    }
}

fn homology(input: &str) -> novikov_cli::Outcome {
    run(&job(Command::Homology { input: input.into() }))
}

#[test]
fn bundled_files_match_the_library_examples() {
    for (name, data) in examples::all() {
        let text = corpus::bundled(name).unwrap();
        let file: MorseFile = load(name, text, MORSE_SCHEMA).unwrap();
        assert_eq!(file.name.as_deref(), Some(name));
        assert_eq!(file.to_data(name).unwrap(), data, "{name}");
    }
    assert_eq!(corpus::MORSE_EXAMPLES.len(), examples::all().len());
}

#[test]
fn every_bundled_file_loads() {
    for (name, _) in corpus::BUNDLED {
        let out = run(&job(Command::Examples {
            name: Some(name.to_string()),
        }));
        assert_eq!(out.code, 0, "{name}: {}", out.stderr);
        assert_eq!(out.stdout, corpus::bundled(name).unwrap());
    }
}

fn write_temp(tag: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("novikov-inputs-{}-{tag}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("input.toml");
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn schema_violations_name_the_field() {
    let cases = [
        (
            "index",
            "schema = \"novikov-morse/1\"\ndimension = 1\n[form]\nperiods = [\"1\"]\n[[points]]\nid = \"a\"\nindex = 2\n",
            "points[0].index",
        ),
        (
            "float",
            "schema = \"novikov-morse/1\"\ndimension = 1\n[form]\nperiods = [1.0]\n",
            "form.periods[0]",
        ),
        (
            "deck",
            "schema = \"novikov-morse/1\"\ndimension = 1\n[form]\nperiods = [\"1\"]\n\
             [[points]]\nid = \"a\"\nindex = 0\n[[points]]\nid = \"b\"\nindex = 1\n\
             [[flows]]\nfrom = \"a\"\nto = \"b\"\ndeck = [0, 1]\nagrees = true\n",
            "flows[0].deck",
        ),
        (
            "unknown",
            "schema = \"novikov-morse/1\"\ndimension = 1\nwhat = 3\n[form]\nperiods = [\"1\"]\n",
            "what",
        ),
        (
            "version",
            "schema = \"novikov-morse/2\"\ndimension = 1\n[form]\nperiods = [\"1\"]\n",
            "schema",
        ),
    ];
    for (tag, text, field) in cases {
        let path = write_temp(tag, text);
        let out = homology(path.to_str().unwrap());
        assert_eq!(out.code, 1, "{tag}");
        assert!(out.stderr.contains(field), "{tag}: {}", out.stderr);
        std::fs::remove_dir_all(path.parent().unwrap()).unwrap();
    }
}

#[test]
fn inconsistent_flow_data_exits_nonzero() {
    // Two index-1 points joined to a and c so that the composite is 2, not 0.
    let text = "schema = \"novikov-morse/1\"\ndimension = 2\n[form]\nperiods = [\"1\"]\n\
        [[points]]\nid = \"a\"\nindex = 0\n[[points]]\nid = \"b\"\nindex = 1\n[[points]]\nid = \"c\"\nindex = 2\n\
        [[flows]]\nfrom = \"a\"\nto = \"b\"\ndeck = [0]\nagrees = true\n\
        [[flows]]\nfrom = \"b\"\nto = \"c\"\ndeck = [0]\nagrees = false\n";
    let path = write_temp("inconsistent", text);
    let out = homology(path.to_str().unwrap());
    assert_eq!(out.code, EXIT_NOT_A_COMPLEX);
    assert!(out.stdout.contains("FAILED"), "{}", out.stdout);
    std::fs::remove_dir_all(path.parent().unwrap()).unwrap();
}

#[test]
fn windowed_data_uses_its_window() {
    let text = "schema = \"novikov-morse/1\"\ndimension = 1\nwindow = \"3\"\n[form]\nperiods = [\"1\"]\n\
        [[points]]\nid = \"a\"\nindex = 0\n[[points]]\nid = \"b\"\nindex = 1\n\
        [[flows]]\nfrom = \"a\"\nto = \"b\"\ndeck = [0]\nagrees = true\n\
        [[flows]]\nfrom = \"a\"\nto = \"b\"\ndeck = [1]\nagrees = true\n";
    let path = write_temp("window", text);
    let p = path.to_str().unwrap();
    let out = homology(p);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("window      3\nprecision   3\n"), "{}", out.stdout);
    let mut j = job(Command::Homology { input: p.into() });
    j.precision = Some("5".into());
    let out = run(&j);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("exceeds the completeness window"), "{}", out.stderr);
    std::fs::remove_dir_all(path.parent().unwrap()).unwrap();
}

#[test]
fn examples_directory_override() {
    let dir = std::env::temp_dir().join(format!("novikov-corpus-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        dir.join("circle_degree1.toml"),
        corpus::bundled("torsion_demo").unwrap(),
    )
    .unwrap();
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_novikov"))
        .args(["homology", "example:circle_degree1"])
        .env(corpus::ENV_VAR, &dir)
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("complex     torsion_demo"), "{stdout}");
    std::fs::remove_dir_all(&dir).unwrap();
}

fn arb_morse() -> impl Strategy<Value = MorseData> {
    let forms = prop_oneof![
        Just(Arc::new(DegreeForm::trivial())),
        Just(Arc::new(DegreeForm::cyclic())),
        Just(Arc::new(DegreeForm::with_sqrt("xi", 2).unwrap())),
    ];
    (forms, 0usize..=3, prop::collection::vec(0usize..=3, 0..6), any::<u64>(), prop::option::of(1i64..20))
        .prop_map(|(form, dimension, indices, seed, window)| {
            let points: Vec<CriticalPoint> = indices
                .iter()
                .enumerate()
                .map(|(i, &k)| CriticalPoint {
                    id: format!("p{i}"),
                    index: k.min(dimension),
                })
                .collect();
            let q = form.q();
            let mut records = Vec::new();
            let mut s = seed;
            for x in &points {
                for y in &points {
                    if y.index == x.index + 1 {
                        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        let deck = (0..q).map(|k| ((s >> (8 * k + 8)) % 5) as i64 - 1).collect();
                        records.push(FlowLineRecord {
                            from: x.id.clone(),
                            to: y.id.clone(),
                            deck: LatticePoint::new(deck),
                            orientation_agrees: s >> 40 & 1 == 0,
                        });
                    }
                }
            }
            let window = match window {
                Some(w) => Cutoff::Finite(form.integer_degree(w)),
                None => Cutoff::Infinite,
            };
            MorseData {
                dimension,
                form,
                points,
                records,
                window,
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn morse_files_round_trip(data in arb_morse()) {
        let text = MorseFile::describe(Some("generated"), &data).render();
        let file: MorseFile = load("generated", &text, MORSE_SCHEMA).unwrap();
        prop_assert_eq!(file.to_data("generated").unwrap(), data);
    }
}
