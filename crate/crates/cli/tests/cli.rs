use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use receptron::dsl;
use receptron::par::Exec;
use receptron_cli::{render_grid, RenderArgs, RenderPlan};

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/corpus").join(name)
}

fn receptron(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_receptron"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn cube() -> String {
    corpus("cube.rcp").to_str().unwrap().to_string()
}

/// Decodes a P2 image into rows of pixel values.
fn read_pgm(text: &str) -> (usize, usize, Vec<u32>) {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("P2"));
    let dims: Vec<usize> = lines.next().unwrap().split(' ').map(|v| v.parse().unwrap()).collect();
    assert_eq!(lines.next(), Some("255"));
    let mut pixels = Vec::new();
    for line in lines {
        assert!(line.len() <= 70, "line too long: {}", line.len());
        pixels.extend(line.split(' ').map(|v| v.parse::<u32>().unwrap()));
    }
    assert_eq!(pixels.len(), dims[0] * dims[1]);
    (dims[0], dims[1], pixels)
}

#[test]
fn classify_cube_points() {
    let dir = tempfile::tempdir().unwrap();
    let points = write(dir.path(), "p.csv", "5,3,10\n0,0,0\n 5.5 ,3.5,10.9\n");
    let o = receptron(&["classify", "--spec", &cube(), "--points", &points]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x0,x1,x2,output\n5,3,10,1\n0,0,0,0\n 5.5 ,3.5,10.9,1\n");
}

#[test]
fn classify_header_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let points = write(dir.path(), "p.csv", "a,b,c\n5,3,10\n6,3,10\n");
    let out = dir.path().join("out.csv");
    let o = receptron(&[
        "classify",
        "--spec",
        &cube(),
        "--points",
        &points,
        "--header",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    // 6 sits on the boundary, which is outside
    assert_eq!(fs::read_to_string(out).unwrap(), "a,b,c,output\n5,3,10,1\n6,3,10,0\n");
}

#[test]
fn classify_empty_file_writes_header() {
    let dir = tempfile::tempdir().unwrap();
    let points = write(dir.path(), "p.csv", "");
    let o = receptron(&["classify", "--spec", &cube(), "--points", &points]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x0,x1,x2,output\n");
}

#[test]
fn classify_errors() {
    let dir = tempfile::tempdir().unwrap();
    let narrow = write(dir.path(), "narrow.csv", "1,2\n");
    let o = receptron(&["classify", "--spec", &cube(), "--points", &narrow]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("arity"));

    let text = write(dir.path(), "text.csv", "1,2,banana\n");
    assert_eq!(receptron(&["classify", "--spec", &cube(), "--points", &text]).status.code(), Some(3));

    let missing = dir.path().join("nope.csv");
    let o = receptron(&["classify", "--spec", &cube(), "--points", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));

    let bad = corpus("errors/bad_char.rcp");
    let o = receptron(&["classify", "--spec", bad.to_str().unwrap(), "--points", &narrow]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("3:10"));
}

#[test]
fn classify_is_worker_independent() {
    let dir = tempfile::tempdir().unwrap();
    let rows: String = (0..5000)
        .map(|i| format!("{},{},{}\n", 4.0 + (i % 17) as f64 * 0.13, 2.0 + (i % 13) as f64 * 0.17, 10.0))
        .collect();
    let points = write(dir.path(), "p.csv", &rows);
    let one = receptron(&["classify", "--spec", &cube(), "--points", &points, "--workers", "1"]);
    let four = receptron(&["classify", "--spec", &cube(), "--points", &points, "--workers", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(stdout(&one).lines().count(), 5001);
}

#[test]
fn render_cube_slice_is_the_face_rectangle() {
    let o = receptron(&[
        "render", "--spec", &cube(), "--axes", "0,1", "--slice", "2=10", "--range", "3:7,1:5", "--res", "8",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let (w, h, pixels) = read_pgm(&stdout(&o));
    assert_eq!((w, h), (8, 8));
    // pixels are 0.5 wide; x in (4, 6) is columns 2..6, y in (2, 4) is rows 2..6
    for row in 0..8 {
        for col in 0..8 {
            let inside = (2..6).contains(&col) && (2..6).contains(&row);
            assert_eq!(pixels[row * 8 + col], if inside { 255 } else { 0 }, "({row}, {col})");
        }
    }
}

#[test]
fn render_orientation() {
    // top-left pixel is (min x, max y)
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "corner.rcp",
        "domain A { center = [0.5, 3.5]; width = [1, 1]; }\nmain = A;\n",
    );
    let o = receptron(&["render", "--spec", &spec, "--axes", "0,1", "--range", "0:4,0:4", "--res", "4"]);
    let (_, _, pixels) = read_pgm(&stdout(&o));
    let lit: Vec<usize> = (0..16).filter(|&k| pixels[k] == 255).collect();
    assert_eq!(lit, vec![0]);
}

#[test]
fn render_matches_library_pixel_for_pixel() {
    let dir = tempfile::tempdir().unwrap();
    for (name, axes, slice) in [
        ("open_domain.rcp", "0,1", "2=0"),
        ("open_domain.rcp", "0,1", "2=1.7"),
        ("open_domain.rcp", "2,0", "1=0.4"),
        ("nested.rcp", "0,1", ""),
        ("two_cubes.rcp", "0,2", "1=0.5"),
        ("slab_or_column.rcp", "1,2", "0=0.3"),
        ("overlap.rcp", "0,1", ""),
    ] {
        let spec = corpus(name);
        let doc = dsl::parse(&fs::read_to_string(&spec).unwrap()).unwrap();
        let artifact = doc.main_artifact().unwrap();
        let slice = if artifact.arity() == 2 { "" } else { slice };
        let pgm = dir.path().join("out.pgm");
        let csv = dir.path().join("out.csv");
        let o = receptron(&[
            "render",
            "--spec",
            spec.to_str().unwrap(),
            "--axes",
            axes,
            "--slice",
            slice,
            "--res",
            "24",
            "--out",
            pgm.to_str().unwrap(),
            "--csv",
            csv.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&o.stderr));
        let (_, _, pixels) = read_pgm(&fs::read_to_string(&pgm).unwrap());

        let args = RenderArgs {
            spec: spec.clone(),
            axes: axes.into(),
            slice: slice.into(),
            range: None,
            res: 24,
            out: None,
            csv: None,
            workers: None,
        };
        let plan = RenderPlan::from_args(&args, &artifact).unwrap();
        for (k, &p) in pixels.iter().enumerate() {
            let x = plan.point(k / 24, k % 24);
            assert_eq!(p == 255, artifact.eval(&x).unwrap(), "{name} pixel {k}");
        }
        assert_eq!(
            render_grid(&artifact, &plan, Exec::Sequential).unwrap(),
            pixels.iter().map(|&p| p == 255).collect::<Vec<_>>()
        );

        let grid = fs::read_to_string(&csv).unwrap();
        let mut rows = grid.lines();
        assert!(rows.next().unwrap().starts_with("row,col,"));
        for (k, line) in rows.enumerate() {
            let bit = line.rsplit(',').next().unwrap();
            assert_eq!(bit == "1", pixels[k] == 255);
        }
    }
}

#[test]
fn render_open_domain_slices() {
    let spec = corpus("open_domain.rcp");
    let spec = spec.to_str().unwrap();
    // on the z = 0 slice the plane band (|x| < 1 or |y| < 1) is active
    let o = receptron(&["render", "--spec", spec, "--axes", "0,1", "--slice", "2=0", "--range", "-4:4,-4:4", "--res", "8"]);
    let (_, _, pixels) = read_pgm(&stdout(&o));
    for row in 0..8 {
        for col in 0..8 {
            let band = (3..5).contains(&col) || (3..5).contains(&row);
            assert_eq!(pixels[row * 8 + col] == 255, band);
        }
    }
    // away from the z slab nothing fires
    let o = receptron(&["render", "--spec", spec, "--axes", "0,1", "--slice", "2=3", "--range", "-4:4,-4:4", "--res", "8"]);
    let (_, _, pixels) = read_pgm(&stdout(&o));
    assert!(pixels.iter().all(|&p| p == 0));
}

#[test]
fn render_argument_errors() {
    let c = cube();
    for args in [
        vec!["--axes", "0,0", "--slice", "2=0"],
        vec!["--axes", "0,3", "--slice", "1=0"],
        vec!["--axes", "0,1"],
        vec!["--axes", "0,1", "--slice", "2=0,1=4"],
        vec!["--axes", "0", "--slice", "2=0"],
        vec!["--axes", "0,1", "--slice", "2=x"],
        vec!["--axes", "0,1", "--slice", "2=0", "--res", "1"],
        vec!["--axes", "0,1", "--slice", "2=0", "--range", "1:0,0:1"],
        vec!["--axes", "0,1", "--slice", "2=0", "--range", "0:1"],
    ] {
        let mut full = vec!["render", "--spec", &c];
        full.extend(args.iter());
        assert_eq!(receptron(&full).status.code(), Some(3), "{args:?}");
    }
    let bad = corpus("errors/no_main.rcp");
    let o = receptron(&["render", "--spec", bad.to_str().unwrap(), "--axes", "0,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_cube_is_clean() {
    let o = receptron(&["verify", "--spec", &cube(), "--samples", "100000", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("seed: 3\n"));
    assert!(text.contains("  tested: 100000\n"));
    assert!(text.ends_with("total mismatches: 0\n"));
}

#[test]
fn verify_every_corpus_document() {
    for entry in fs::read_dir(corpus("")).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "rcp") {
            let o = receptron(&["verify", "--spec", path.to_str().unwrap(), "--samples", "3000"]);
            assert_eq!(o.status.code(), Some(0), "{}\n{}", path.display(), stdout(&o));
        }
    }
}

#[test]
fn verify_two_cube_network() {
    let spec = corpus("two_cubes.rcp");
    let o = receptron(&["verify", "--spec", spec.to_str().unwrap(), "--samples", "20000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("suite N: union oracle vs disjunction network vs multidomain unit"));
}

#[test]
fn verify_negative_control_fails() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "broken.rcp",
        "domain A { center = [5, 3, 10]; width = [2, 2, 2]; }\nunit U = selective(A, tl = 0.5, th = 1.5);\nmain = U;\n",
    );
    let o = receptron(&["verify", "--spec", &spec, "--samples", "2000"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("counterexample #"));
    assert!(!text.ends_with("total mismatches: 0\n"));
}

#[test]
fn verify_argument_errors() {
    assert_eq!(receptron(&["verify", "--spec", &cube(), "--samples", "0"]).status.code(), Some(3));
    assert_eq!(receptron(&["verify", "--spec", "/no/such/spec.rcp"]).status.code(), Some(3));
    assert_eq!(receptron(&["verify"]).status.code(), Some(3));
    assert_eq!(receptron(&["verify", "--spec", &cube(), "--seed", "x"]).status.code(), Some(3));
}

#[test]
fn census_output() {
    let o = receptron(&["census", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n,separable,total,ratio\n3,104,256,0.406250\n");
    let o = receptron(&["census", "--n", "2"]);
    assert_eq!(stdout(&o), "n,separable,total,ratio\n2,14,16,0.875000\n");
    assert_eq!(receptron(&["census", "--n", "5"]).status.code(), Some(3));
    assert_eq!(receptron(&["census", "--n", "0"]).status.code(), Some(3));
}

#[test]
fn synth_examples() {
    for (bits, patterns) in [("0110", 4), ("0000", 4), ("01", 2), ("0110100110010110", 16)] {
        let o = receptron(&["synth", "--table", bits]);
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        assert!(text.starts_with(&format!("unit T = truth({bits});\n")));
        assert!(text.ends_with(&format!("verified {patterns}/{patterns} patterns\n")));
        // the declaration line is valid `.rcp`
        let doc = dsl::parse(&format!("{}main = T;\n", text.lines().next().unwrap())).unwrap();
        assert_eq!(doc.units.len(), 1);
    }
    for bad in ["011", "", "01x0", "2"] {
        assert_eq!(receptron(&["synth", "--table", bad]).status.code(), Some(3), "{bad:?}");
    }
}

#[test]
fn help_and_usage() {
    let o = receptron(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("classify"));
    assert_eq!(receptron(&[]).status.code(), Some(3));
    assert_eq!(receptron(&["frobnicate"]).status.code(), Some(3));
}
