use std::ffi::CStr;
use std::ptr;

use qosc::radial::{radial_wavefunction, RadialState, RootBranch};
use qosc::spectrum::enumerate_levels;
use qosc::{CasimirKind, QParam};
use qosc_ffi::*;

struct Param(*mut QoscParam);

impl Param {
    fn new(regime: QoscRegime, w: f64) -> Self {
        let mut p = ptr::null_mut();
        assert_eq!(unsafe { qosc_param_new(regime, w, &mut p) }, QoscStatus::Ok);
        assert!(!p.is_null());
        Param(p)
    }
}

impl Drop for Param {
    fn drop(&mut self) {
        unsafe { qosc_param_free(self.0) }
    }
}

fn last_error() -> Option<String> {
    let p = qosc_last_error_message();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

#[test]
fn energies_match_the_library() {
    let p = Param::new(QoscRegime::Real, 0.7);
    let qp = QParam::real(0.7).unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { qosc_spectrum_new(p.0, 3, 4, QoscCasimir::CqPrime, &mut s) }, QoscStatus::Ok);
    let expect = enumerate_levels(3, 4, CasimirKind::CqPrime, &qp);
    assert_eq!(unsafe { qosc_spectrum_len(s) }, expect.len());
    for (i, lv) in expect.iter().enumerate() {
        let mut got = QoscLevel { n: 0, l: 0, casimir: QoscCasimir::Cq, branch: QoscBranch::Plus, alpha: 0.0, energy: 0.0 };
        assert_eq!(unsafe { qosc_spectrum_get(s, i, &mut got) }, QoscStatus::Ok);
        assert_eq!((got.n, got.l, got.casimir), (lv.n, lv.l, QoscCasimir::CqPrime));
        assert_eq!(got.energy.to_bits(), lv.energy.to_bits());

        let mut e = 0.0;
        let st = unsafe { qosc_energy(p.0, got.n, got.l, got.casimir, got.branch, &mut e) };
        assert_eq!(st, QoscStatus::Ok);
        assert!((e - got.energy).abs() <= 1e-12 * e);
    }
    unsafe { qosc_spectrum_free(s) };
}

#[test]
fn scalar_functions() {
    let p = Param::new(QoscRegime::UnitCircle, 0.3);
    let mut v = 0.0;
    assert_eq!(unsafe { qosc_bracket(p.0, 2.0, &mut v) }, QoscStatus::Ok);
    assert!((v - 2.0 * 0.3f64.cos()).abs() < 1e-15);

    let qp = QParam::real(1.0).unwrap();
    let p = Param::new(QoscRegime::Real, 1.0);
    assert_eq!(unsafe { qosc_radial(p.0, 1, 0, QoscCasimir::Cq, QoscBranch::Minus, 0.7, &mut v) }, QoscStatus::Ok);
    let st = RadialState::new(1, 0, CasimirKind::Cq, RootBranch::Minus, &qp).unwrap();
    assert_eq!(v, radial_wavefunction(&st, 0.7));

    assert_eq!(unsafe { qosc_casimir(p.0, 2, QoscCasimir::CqPrime, &mut v) }, QoscStatus::Ok);
    assert_eq!(v, qosc::qnum::casimir_eigenvalue(2, CasimirKind::CqPrime, &qp));

    let mut q = QoscQuadrupole { radial: 0.0, angular: 0.0, value: 0.0 };
    assert_eq!(unsafe { qosc_quadrupole(p.0, 0, QoscCasimir::Cq, QoscBranch::Plus, &mut q) }, QoscStatus::Ok);
    assert!(q.value > 0.0 && (q.value - q.radial * q.angular).abs() <= 1e-12 * q.value);
}

#[test]
fn harmonic_is_phase_covariant() {
    let p = Param::new(QoscRegime::Real, 0.5);
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { qosc_harmonic_new(p.0, 2, 1, &mut h) }, QoscStatus::Ok);
    let (mut re0, mut im0, mut re1, mut im1) = (0.0, 0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(qosc_harmonic_eval(h, 0.8, 0.0, &mut re0, &mut im0), QoscStatus::Ok);
        assert_eq!(qosc_harmonic_eval(h, 0.8, 1.1, &mut re1, &mut im1), QoscStatus::Ok);
        qosc_harmonic_free(h);
    }
    // Y_{l1}(θ, φ) = e^{iφ} Y_{l1}(θ, 0)
    let (c, s) = (1.1f64.cos(), 1.1f64.sin());
    assert!((re1 - (re0 * c - im0 * s)).abs() < 1e-13);
    assert!((im1 - (re0 * s + im0 * c)).abs() < 1e-13);
}

#[test]
fn error_codes_and_messages() {
    let mut p = ptr::null_mut();
    let st = unsafe { qosc_param_new(QoscRegime::UnitCircle, std::f64::consts::FRAC_PI_2, &mut p) };
    assert_eq!(st, QoscStatus::RootOfUnity);
    assert!(p.is_null());
    assert!(last_error().unwrap().contains("root-of-unity"));

    let st = unsafe { qosc_param_new(QoscRegime::Real, f64::NAN, &mut p) };
    assert_eq!(st, QoscStatus::InvalidParameter);

    assert_eq!(unsafe { qosc_param_new(QoscRegime::Real, 1.0, ptr::null_mut()) }, QoscStatus::NullPointer);
    let mut v = 0.0;
    assert_eq!(unsafe { qosc_bracket(ptr::null(), 2.0, &mut v) }, QoscStatus::NullPointer);
    assert!(last_error().unwrap().contains("param"));

    let real = Param::new(QoscRegime::Real, 1.0);
    let st = unsafe { qosc_energy(real.0, 0, 1, QoscCasimir::Cq, QoscBranch::Minus, &mut v) };
    assert_ne!(st, QoscStatus::Ok);
    assert!(last_error().is_some());

    let circle = Param::new(QoscRegime::UnitCircle, 0.7);
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { qosc_harmonic_new(circle.0, 2, 0, &mut h) }, QoscStatus::HarmonicUndefined);
    assert_eq!(unsafe { qosc_harmonic_new(real.0, 1, 3, &mut h) }, QoscStatus::InvalidArgument);
    assert!(h.is_null());
    assert_eq!(unsafe { qosc_radial(real.0, 0, 0, QoscCasimir::Cq, QoscBranch::Plus, -1.0, &mut v) }, QoscStatus::InvalidArgument);

    // success clears the message
    assert_eq!(unsafe { qosc_bracket(real.0, 2.0, &mut v) }, QoscStatus::Ok);
    assert!(last_error().is_none());
    unsafe {
        qosc_param_free(ptr::null_mut());
        qosc_spectrum_free(ptr::null_mut());
        qosc_harmonic_free(ptr::null_mut());
        assert_eq!(qosc_spectrum_len(ptr::null()), 0);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(qosc_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

/// Compiles a C program against the generated header and the static library.
#[test]
fn c_program_links_and_runs() {
    use std::path::Path;
    use std::process::Command;

    let crate_dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let target = std::env::var_os("CARGO_TARGET_DIR")
        .map(std::path::PathBuf::from)
        .unwrap_or_else(|| crate_dir.join("../../target"));
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let lib = target.join(profile).join("libqosc_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library at {}", lib.display());
        return;
    }
    let exe = std::env::temp_dir().join(format!("qosc-ffi-smoke-{}", std::process::id()));
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
