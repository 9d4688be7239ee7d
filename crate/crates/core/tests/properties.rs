use pairid::algebra::{Backend, Fp, GroupSuite, Transparent};
use pairid::curve::{CurveParams, TateBackend};
use pairid::id::session::{run_session_detailed, session_rngs};
use pairid::id::{keygen, run_session, MessageCodec, Prover, SchemeId, SchemeParams, Transcript, Verifier};
use pairid::lab::{run_attack, ProverOracle, Rewinder, ScriptedAttacker, SummaryMatrix};
use pairid::report::GameReport;
use pairid::sig::hash::{hash_to_group, BitString, HashMode};
use pairid::wire::{frame_decode, frame_encode, Frame, Tag, WireError};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

const PRIMES: [u64; 5] = [11, 101, 1009, 10007, 65521];

fn transparent(p: u64) -> GroupSuite<Transparent> {
    GroupSuite::new(Transparent::new(p).unwrap())
}

fn curve(i: usize) -> GroupSuite<TateBackend> {
    let params = [CurveParams::q59(), CurveParams::q83(), CurveParams::q523()][i % 3];
    GroupSuite::new(TateBackend::new(params))
}

fn scheme() -> impl Strategy<Value = SchemeId> {
    (0..SchemeId::ALL.len()).prop_map(|i| SchemeId::ALL[i])
}

fn bilinear<B: Backend>(suite: &GroupSuite<B>, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let (g, h) = (suite.random_g1(&mut rng), suite.random_g1(&mut rng));
    let (a, b) = (suite.random_scalar(&mut rng), suite.random_scalar(&mut rng));
    let lhs = suite.pairing(&suite.g1_exp(&g, &a), &suite.g1_exp(&h, &b));
    prop_assert_eq!(lhs, suite.g2_exp(&suite.pairing(&g, &h), &(a * b)));
    prop_assert_eq!(suite.pairing(&g, &h), suite.pairing(&h, &g));
    let p = suite.order();
    prop_assert!(suite.is_g1_identity(&suite.g1_exp(&g, &suite.scalar(0))));
    // element^p is the identity: g^(p-1) * g
    let last = suite.g1_mul(&suite.g1_exp(&g, &suite.scalar(p - 1)), &g);
    prop_assert!(suite.is_g1_identity(&last));
    let z = suite.pairing(&g, &h);
    prop_assert!(suite.is_g2_identity(&suite.g2_mul(&suite.g2_exp(&z, &suite.scalar(p - 1)), &z)));
    Ok(())
}

fn session_props<B: Backend>(suite: &GroupSuite<B>, scheme: SchemeId, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let key = keygen(scheme, suite, &mut rng).unwrap();
    prop_assert!(key.is_consistent(suite));
    let out = run_session_detailed(scheme, &key, suite, seed).unwrap();
    let t = out.transcript;
    // only an SCL abort may reject an honest session
    prop_assert!(t.decision.is_accept() || (scheme == SchemeId::Scl && t.response.is_empty()));
    prop_assert_eq!(t.replay(&suite.fork(), &key.public).unwrap(), t.decision);
    let codec = MessageCodec::new(suite.backend(), key.public.challenge_bits());
    let back = Transcript::from_record(&t.to_record(&codec), &codec).unwrap();
    prop_assert_eq!(&back, &t);
    prop_assert_eq!(run_session(scheme, &key, &suite.fork(), seed).unwrap(), t);
    Ok(())
}

fn monotone_counters<B: Backend>(suite: &GroupSuite<B>, scheme: SchemeId, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let key = keygen(scheme, suite, &mut rng).unwrap();
    suite.reset_counters();
    let (pc, vc) = session_rngs(seed);
    let mut prover = Prover::new(suite, &key, pc);
    let mut verifier = Verifier::new(suite, &key.public, vc);
    let mut readings = vec![suite.counters()];
    let commitment = prover.commit().unwrap();
    readings.push(suite.counters());
    if let Some(c) = &commitment {
        verifier.receive_commitment(c).unwrap();
    }
    let challenge = verifier.challenge().unwrap();
    readings.push(suite.counters());
    if let Ok(response) = prover.respond(&challenge) {
        readings.push(suite.counters());
        verifier.decide(&response).unwrap();
        readings.push(suite.counters());
    }
    for w in readings.windows(2) {
        let (a, b) = (w[0], w[1]);
        for (x, y) in [(a.prover, b.prover), (a.verifier, b.verifier)] {
            prop_assert!(x.g1_exp <= y.g1_exp && x.g2_exp <= y.g2_exp && x.pairings <= y.pairings);
        }
        let (x, y) = (a.bandwidth(), b.bandwidth());
        prop_assert!(x.g1 <= y.g1 && x.g2 <= y.g2 && x.zp <= y.zp && x.bits <= y.bits && x.bytes <= y.bytes);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalars_stay_reduced_and_invert(i in 0usize..5, v in any::<u64>()) {
        let p = PRIMES[i];
        let x = Fp::new(v, p);
        prop_assert!(x.value() < p);
        match x.inv() {
            Ok(y) => prop_assert_eq!((x * y).value(), 1),
            Err(_) => prop_assert!(x.is_zero()),
        }
    }

    #[test]
    fn transparent_pairing_is_bilinear(i in 0usize..5, seed in any::<u64>()) {
        bilinear(&transparent(PRIMES[i]), seed)?;
    }

    #[test]
    fn curve_pairing_is_bilinear(i in 0usize..3, seed in any::<u64>()) {
        bilinear(&curve(i), seed)?;
    }

    #[test]
    fn curve_points_on_curve_and_in_subgroup(i in 0usize..3, seed in any::<u64>()) {
        let suite = curve(i);
        let b = suite.backend();
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let pt = suite.random_g1(&mut rng);
        prop_assert!(b.curve().is_on_curve(&pt));
        prop_assert!(b.curve().mul(&pt, b.params().p).is_infinity());
        let z = suite.pairing(&pt, &suite.generator());
        prop_assert_eq!(z.pow(b.params().p), pairid::curve::Fq2::one(b.params().q));
    }

    #[test]
    fn try_and_increment_lands_in_subgroup(i in 0usize..3, bytes in proptest::collection::vec(any::<u8>(), 0..24)) {
        let suite = curve(i);
        let b = suite.backend();
        let h = hash_to_group(&BitString::from_bytes(&bytes), &HashMode::TryAndIncrement, &suite).unwrap();
        prop_assert!(b.curve().is_on_curve(&h));
        prop_assert!(b.curve().mul(&h, b.params().p).is_infinity());
    }

    #[test]
    fn transparent_sessions(s in scheme(), i in 0usize..3, seed in any::<u64>()) {
        session_props(&transparent(PRIMES[i]), s, seed)?;
    }

    #[test]
    fn curve_sessions(s in scheme(), i in 0usize..3, seed in any::<u64>()) {
        session_props(&curve(i), s, seed)?;
    }

    #[test]
    fn counters_never_decrease(s in scheme(), seed in any::<u64>()) {
        monotone_counters(&transparent(1009), s, seed)?;
        monotone_counters(&curve(1), s, seed)?;
    }

    #[test]
    fn default_challenge_space_exceeds_session_budget(i in 0usize..5) {
        let p = PRIMES[i];
        let params = SchemeParams::default_for(p, pairid::algebra::BackendKind::Transparent);
        prop_assert!(params.challenge_bits >= 64 || (1u64 << params.challenge_bits) > p);
    }

    #[test]
    fn frames_round_trip(t in 1u8..=6, payload in proptest::collection::vec(any::<u8>(), 0..512)) {
        let frame = Frame { tag: Tag::from_byte(t).unwrap(), payload };
        let bytes = frame_encode(&frame);
        let declared = u32::from_be_bytes(bytes[..4].try_into().unwrap()) as usize;
        prop_assert_eq!(declared, frame.payload.len() + 1);
        prop_assert_eq!(frame_decode(&bytes).unwrap(), frame);
    }

    #[test]
    fn unknown_tags_rejected(t in 7u8.., payload in proptest::collection::vec(any::<u8>(), 0..32)) {
        let mut bytes = frame_encode(&Frame { tag: Tag::Hello, payload });
        bytes[4] = t;
        prop_assert!(matches!(frame_decode(&bytes), Err(WireError::UnknownTag(x)) if x == t));
    }

    #[test]
    fn game_reports_bound_advantage(outcomes in proptest::collection::vec(any::<bool>(), 0..200)) {
        let mut r = GameReport::new("prop");
        for &w in &outcomes {
            r.record_trial(w);
        }
        prop_assert!(r.wins <= r.trials);
        let expected = if r.trials == 0 { 0.0 } else { r.wins as f64 / r.trials as f64 };
        prop_assert_eq!(r.advantage(), expected);
    }

    #[test]
    fn attacks_replay_exactly(seed in any::<u64>(), eps in 0.0f64..=1.0) {
        let suite = transparent(101);
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let key = keygen(SchemeId::Cdhid, &suite, &mut rng).unwrap();
        let run = |attacker: &mut ScriptedAttacker| {
            let honest = pairid::lab::HonestProver::new(&suite, &key, ChaCha20Rng::seed_from_u64(seed ^ 1));
            let mut oracle = ProverOracle::new(honest, 2);
            let ch = vec![pairid::id::Component::G1(suite.generator())];
            run_attack(attacker, &suite, &key.public, &mut oracle, seed, &mut |_| ch.clone()).unwrap()
        };
        let a = run(&mut ScriptedAttacker::new(eps, 2));
        let b = run(&mut ScriptedAttacker::new(eps, 2));
        prop_assert_eq!(a.transcript, b.transcript);
        prop_assert_eq!(a.state, b.state);
    }

    #[test]
    fn summary_entries_match_replays(seed in any::<u64>()) {
        let suite = transparent(11);
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let rewinder = Rewinder::new(&suite, keygen(SchemeId::Owfid, &suite, &mut rng).unwrap(), 2);
        let mut attacker = ScriptedAttacker::new(0.5, 2);
        let seeds: Vec<u64> = (0..4).map(|k| seed.wrapping_add(k)).collect();
        let challenges: Vec<_> = (0..4).map(|_| rewinder.sample_challenge(&mut rng).unwrap()).collect();
        let m = SummaryMatrix::from_attack(&rewinder, &mut attacker, &seeds, &challenges).unwrap();
        for (r, &s) in seeds.iter().enumerate() {
            for (c, ch) in challenges.iter().enumerate() {
                prop_assert_eq!(m.get(r, c), rewinder.run(&mut attacker, s, ch).unwrap().decision.is_accept());
            }
        }
    }
}
