//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::collections::{BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{all_grid_mosaics, deletable_from_scratch, edge_adjacent, random_slicing, stretch};
use mosaic::baxter::{
    all_permutations, baxter_number, bp2fp, fp2bp, is_baxter, is_baxter_naive, Permutation,
};
use mosaic::codec::{decode, decode_ascii, encode, trace, CodeString};
use mosaic::geometry::{
    equivalent_by_graphs, is_standard_form, normalize, same_constraint_graphs, FloorplanDrawing,
};
use mosaic::oracle::{count_valid_codes, entropy_report, enumerate_floorplans, random_code};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Baxter numbers for n = 1..=9, listed independently of the formula.
const BAXTER: [u64; 9] = [1, 2, 6, 22, 92, 422, 2074, 10754, 58202];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn enumerated(n: usize) -> Vec<(CodeString, FloorplanDrawing)> {
    enumerate_floorplans(n).expect("n within cap")
}

fn counting_identity() -> Outcome {
    let start = Instant::now();
    let mut counts = Vec::new();
    for n in 1..=8 {
        let valid = count_valid_codes(n, 8).map_err(|e| e.to_string())?;
        ensure(valid == BAXTER[n - 1], || {
            format!("n={n}: {valid} valid codes, expected {}", BAXTER[n - 1])
        })?;
        ensure(BigUint::from(valid) == baxter_number(n as u32), || {
            format!("n={n}: formula disagrees")
        })?;
        counts.push(valid.to_string());
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("sweep took {elapsed:?}"))?;
    Ok(format!("counts {} in {:.2?}", counts.join(","), elapsed))
}

fn code_length() -> Outcome {
    let check = |f: &FloorplanDrawing| -> Result<(), String> {
        let bits = encode(f).map_err(|e| e.to_string())?.bit_len();
        ensure(bits == 3 * f.len() - 3, || {
            format!("{} blocks encoded to {bits} bits", f.len())
        })
    };
    let mut checked = 0usize;
    for n in 1..=7 {
        for (_, f) in enumerated(n) {
            check(&f)?;
            checked += 1;
        }
        for f in all_grid_mosaics(n.min(6)) {
            check(&f)?;
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut largest = 0;
    for &n in &[2usize, 9, 33, 100, 500, 2_000, 10_000] {
        let reps = if n <= 500 { 20 } else { 2 };
        for _ in 0..reps {
            let (_, f) = random_code(n, rng.gen());
            check(&f)?;
            check(&stretch(&f, &mut rng))?;
            check(&random_slicing(n, &mut rng))?;
            checked += 3;
            largest = largest.max(n);
        }
    }
    Ok(format!("{checked} drawings, largest n={largest}"))
}

fn seven_block_string() -> Outcome {
    let bits = "000 011 101 000 110 111";
    let run = || -> Result<(FloorplanDrawing, CodeString), String> {
        let f = decode_ascii(bits).map_err(|e| e.to_string())?;
        let c = encode(&f).map_err(|e| e.to_string())?;
        Ok((f, c))
    };
    let (f, c) = run()?;
    ensure(f.len() == 7, || format!("decoded {} blocks", f.len()))?;
    ensure(is_standard_form(&f), || "decoded drawing not in standard form".into())?;
    ensure(c.to_grouped_ascii() == bits, || format!("re-encoded as {}", c.to_grouped_ascii()))?;
    let mut times: Vec<Duration> = (0..11)
        .map(|_| {
            let t = Instant::now();
            let _ = std::hint::black_box(run());
            t.elapsed()
        })
        .collect();
    times.sort();
    let median = times[times.len() / 2];
    ensure(median < Duration::from_millis(1), || format!("median {median:?}"))?;
    Ok(format!("7 blocks, {}x{}, decode+encode median {median:?}", f.width(), f.height()))
}

fn roundtrips() -> Outcome {
    let mut drawings = 0usize;
    let mut codes = 0usize;
    for n in 1..=7 {
        let listed = enumerated(n);
        for (c, f) in &listed {
            let g = decode(&encode(f).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            ensure(&g == f, || format!("decode(encode(F)) != F for code {c}"))?;
            drawings += 1;
        }
        for f in all_grid_mosaics(n.min(6)) {
            let g = decode(&encode(&f).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            ensure(equivalent_by_graphs(&f, &g).map_err(|e| e.to_string())?, || {
                format!("class changed for grid drawing with {n} blocks")
            })?;
            drawings += 1;
        }
        // The flat code space, scanned without the enumerator's pruning.
        let total = 1usize << (3 * (n - 1));
        let mut valid = Vec::new();
        for word in 0..total {
            let bits: Vec<bool> = (0..3 * (n - 1)).rev().map(|k| word >> k & 1 == 1).collect();
            let c = CodeString::from_bit_slice(&bits).map_err(|e| e.to_string())?;
            if let Ok(f) = decode(&c) {
                let back = encode(&f).map_err(|e| e.to_string())?;
                ensure(back == c, || format!("encode(decode({c})) = {back}"))?;
                valid.push(c);
                codes += 1;
            }
        }
        let listed_codes: Vec<CodeString> = listed.into_iter().map(|(c, _)| c).collect();
        ensure(valid == listed_codes, || format!("n={n}: flat scan and enumeration disagree"))?;
    }
    Ok(format!("{drawings} drawings and {codes} valid codes"))
}

fn deletable_uniqueness() -> Outcome {
    let mut steps = 0usize;
    for n in 1..=7 {
        for (c, f) in enumerated(n) {
            let t = trace(&f).map_err(|e| e.to_string())?;
            let mut alive: Vec<bool> = vec![true; t.standard.len()];
            let blocks = t.standard.blocks();
            let mut order = t.order();
            order.push(t.last);
            for (k, r) in t.removals.iter().enumerate() {
                ensure(r.candidates == 1, || {
                    format!("{c}: scan found {} candidates", r.candidates)
                })?;
                let ids: Vec<usize> = (0..blocks.len()).filter(|&i| alive[i]).collect();
                let remaining: Vec<_> = ids.iter().map(|&i| blocks[i]).collect();
                let found: Vec<usize> =
                    deletable_from_scratch(&remaining).into_iter().map(|j| ids[j]).collect();
                ensure(found == vec![r.block], || {
                    format!("{c}: direct scan found {found:?}, encoder removed {}", r.block)
                })?;
                alive[r.block] = false;
                let next = order[k + 1];
                ensure(edge_adjacent(&blocks[r.block], &blocks[next]), || {
                    format!("{c}: blocks {} and {next} are not adjacent", r.block)
                })?;
                steps += 1;
            }
        }
    }
    Ok(format!("{steps} removal steps, 0 violations"))
}

fn standard_form() -> Outcome {
    let check = |f: &FloorplanDrawing| -> Result<(), String> {
        let g = normalize(f).map_err(|e| e.to_string())?;
        ensure(is_standard_form(&g), || "normalize output not standard".into())?;
        ensure(same_constraint_graphs(f, &g), || "normalize changed the graphs".into())?;
        ensure(normalize(&g).map_err(|e| e.to_string())? == g, || {
            "normalize not idempotent".into()
        })
    };
    let mut exhaustive = 0usize;
    for n in 1..=6 {
        for (_, f) in enumerated(n) {
            check(&f)?;
            exhaustive += 1;
        }
        for f in all_grid_mosaics(n) {
            check(&f)?;
            exhaustive += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut non_standard = 0usize;
    for k in 0..1000 {
        let n = rng.gen_range(2..=60);
        let f = if k % 2 == 0 {
            random_slicing(n, &mut rng)
        } else {
            stretch(&random_code(n, rng.gen()).1, &mut rng)
        };
        non_standard += usize::from(!is_standard_form(&f));
        check(&f)?;
    }
    Ok(format!("{exhaustive} exhaustive + 1000 random ({non_standard} not in standard form)"))
}

fn baxter_recognition() -> Outcome {
    let start = Instant::now();
    let mut counts = Vec::new();
    for n in 1..=9 {
        let perms = all_permutations(n);
        let count = perms.iter().filter(|p| is_baxter(p)).count() as u64;
        ensure(count == BAXTER[n - 1], || format!("n={n}: {count} Baxter permutations"))?;
        ensure(BigUint::from(count) == baxter_number(n as u32), || {
            format!("n={n}: formula disagrees")
        })?;
        if n <= 7 {
            let naive = perms.iter().filter(|p| is_baxter_naive(p)).count() as u64;
            ensure(naive == count, || format!("n={n}: naive check counts {naive}"))?;
        }
        counts.push(count.to_string());
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("counts {} in {:.2?}", counts.join(","), elapsed))
}

fn bijection() -> Outcome {
    for n in 1..=6 {
        let drawings = enumerated(n);
        let mut image = BTreeSet::new();
        for (c, f) in &drawings {
            let p = fp2bp(f).map_err(|e| e.to_string())?;
            ensure(is_baxter_naive(&p), || format!("fp2bp({c}) = {p} is not Baxter"))?;
            let g = bp2fp(&p).map_err(|e| e.to_string())?;
            ensure(&g == f && equivalent_by_graphs(&g, f).unwrap_or(false), || {
                format!("bp2fp(fp2bp({c})) differs")
            })?;
            image.insert(p);
        }
        ensure(image.len() == drawings.len(), || format!("n={n}: fp2bp not injective"))?;
        let baxter: BTreeSet<Permutation> =
            all_permutations(n).into_iter().filter(is_baxter_naive).collect();
        ensure(image == baxter, || format!("n={n}: image is not the Baxter set"))?;
        for p in &baxter {
            let back = fp2bp(&bp2fp(p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            ensure(&back == p, || format!("fp2bp(bp2fp({p})) = {back}"))?;
        }
    }
    let distinct: HashSet<_> = enumerated(6).iter().map(|(c, _)| c.clone()).collect();
    Ok(format!("bijective for n <= 6 ({} classes at n=6)", distinct.len()))
}

fn entropy() -> Outcome {
    let r = entropy_report(7);
    let classes = BigUint::from(2074u32);
    ensure(r.classes == classes, || format!("classes {}", r.classes))?;
    // 2^11 < 2074 <= 2^12.
    ensure(BigUint::from(2048u32) < classes && classes <= BigUint::from(4096u32), || {
        "bound check".into()
    })?;
    ensure((r.bits_used, r.bits_needed, r.slack) == (18, 12, 6), || r.to_string())?;
    Ok(r.to_string())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("counting identity", counting_identity),
        ("code length 3n-3", code_length),
        ("seven-block example string", seven_block_string),
        ("roundtrips", roundtrips),
        ("unique deletable rectangle", deletable_uniqueness),
        ("standard form", standard_form),
        ("Baxter recognition", baxter_recognition),
        ("floorplan/permutation bijection", bijection),
        ("entropy report", entropy),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
