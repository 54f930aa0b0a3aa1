#!/usr/bin/env python3
"""Regenerate the demo corpus under data/demo.

The corpus is synthetic but engineered: candidate counts per video, the
per-concept support matrix, and the undecided/no-reason splits are fixed
targets, and every citizen utterance is built from phrase banks that the
mock backend's keyword scanner decodes back to exactly the ground-truth
row. The script verifies that property with a mirrored scanner before
writing anything, so a phrase-bank edit that breaks decoding fails fast.

Deterministic for a given --seed; the checked-in corpus uses the default.
"""

import argparse
import random
import sys
from pathlib import Path

# ---------------------------------------------------------------------------
# targets

# vid, location, channel, (RTE, KK, INCE, OTHER) before any label override
VIDEOS = [
    ("v01", "Bakırköy", "Sokak Mikrofonu", (7, 14, 6, 3)),
    ("v02", "Bağcılar", "Sokak Mikrofonu", (9, 9, 2, 6)),
    ("v03", "Esenler", "Sokak Mikrofonu", (14, 11, 2, 1)),
    ("v04", "Tuzla", "Sokak Mikrofonu", (5, 15, 6, 6)),
    ("v05", "Pendik", "Meydan Turu", (10, 5, 4, 4)),
    ("v06", "Üsküdar", "Meydan Turu", (8, 9, 1, 3)),
    ("v07", "Kadıköy", "Meydan Turu", (3, 17, 6, 3)),
    ("v08", "Şişli", "Meydan Turu", (5, 13, 2, 1)),
    ("v09", "Avcılar", "Seçim Gündemi", (5, 7, 7, 3)),
    ("v10", "Ankara", "Seçim Gündemi", (13, 9, 3, 6)),
    ("v11", "Bolu", "Seçim Gündemi", (9, 11, 5, 4)),
    ("v12", "Kocaeli", "Seçim Gündemi", (15, 12, 5, 1)),
]

# v02 keeps İnce on the ballot in its captions but the channel merged his
# supporters into "other" when it published its own tally, so the manifest
# carries an INCE=OTHER override; its two İnce voters gave no reason.
OVERRIDE_VIDEO = "v02"

# concept slot multisets per candidate (slot name -> count); slot names
# that match a concept are ground-truth concepts, the rest are specials
RTE_SLOTS = [
    ("Leadership", 34), ("Development", 17), ("Stability", 10),
    ("Reliable", 3), ("Persistence", 2), ("Faith", 2), ("Economy", 1),
    ("Honesty", 1), ("OTHER_CONCEPT", 12), ("NO_REASON", 21),
]
KK_SLOTS = [
    ("Change", 27), ("Economy", 14), ("Honesty", 10), ("Leadership", 8),
    ("Had Enough", 5), ("Intimacy", 4), ("Justice", 3), ("Reliable", 3),
    ("Persistence", 1), ("OTHER_CONCEPT", 14), ("NO_REASON", 43),
]
INCE_SLOTS = [
    ("Change", 6), ("Intimacy", 4), ("Economy", 3), ("Persistence", 3),
    ("Leadership", 2), ("Honesty", 2), ("Reliable", 1),
    ("OTHER_CONCEPT", 6), ("NO_REASON", 20),
]
OTHER_SLOTS = [("UNDECIDED", 35), ("PURE_OTHER", 6)]

CONCEPTS_TXT = """\
# concept inventory shown to the backend, one `name: explanation` per line
Leadership: He is a good or charismatic leader
Change: The country needs a change
Economy: The economy is bad, people are poor
Development: He developed the country
Honesty: He does not lie and is not corrupt
Stability: The country needs politically stable
Intimacy: People love him
Reliable: You can count on him
Persistance: He can withstand the adversities
Had Enough: Had enough of the current system
Justice: He will be fair to everyone
Faith: He is religious
"""

MERGE_MAP_TXT = """\
# reviewed merge table: free-form concept strings -> inventory names
charisma => Leadership
being a world-class leader => Leadership
strong leadership => Leadership
fresh start => Change
cost of living => Economy
persistence => Persistance
trustworthy => Reliable
"""

TR_TEMPLATE = """\
Aşağıda muhabir ile vatandaşlar arasında geçen seçim anketi röportajlarının
zaman damgalı metnini ve oy verme nedenlerini kavramsallaştırmamıza yardımcı
olacak kavram listesini bulabilirsiniz.

Önemli Ayrıntılar:

Aynı anda birden fazla vatandaşla röportaj yapılıyorsa vatandaşlar Citizen 1,
Citizen 2 olarak adlandırılır.

"Neden ... değil?" sorusuna verilen cevaplar vatandaşların oyunu göstermez.

Altyazılar:
{captions}
Kavram listesi:
{concepts}
Sorular:

Soru 1: Toplamda kaç vatandaşla röportaj yapıldı?

Soru 2: Her vatandaşın tercih ettiği adayı, oy verme nedenini ve nedeni
özetleyen tek kelimelik kavramı kavram listesinden en uygun kavramı seçerek
.csv biçiminde veriniz. Neden belirtmedilerse siz de neden belirtmeyiniz.
Listeden uygun bir kavram bulamazsanız "other" seçiniz. Vatandaş kararsızsa
nedeni ve kavramı kararsız olarak işaretleyiniz.

Cevaplar:

Cevap 1:

Cevap 2:
"""

# ---------------------------------------------------------------------------
# keyword tables mirrored from the mock backend scanner

CANDIDATE_KEYWORDS = {
    "erdoğan": "RTE", "tayyip": "RTE",
    "kılıçdaroğlu": "KK", "kemal": "KK",
    "ince": "INCE", "muharrem": "INCE",
    "kararsız": "UNDECIDED",
    "uzan": "OTHER", "oğan": "OTHER", "demirtaş": "OTHER",
}
CONCEPT_KEYWORDS = {
    "lider": "Leadership", "karizma": "Leadership", "dünya": "Leadership",
    "değişim": "Change", "yenilik": "Change",
    "ekonomi": "Economy", "pahalılık": "Economy",
    "kalkın": "Development", "dürüst": "Honesty", "istikrar": "Stability",
    "sevgi": "Intimacy", "güven": "Reliable", "mücadele": "Persistence",
    "bıktık": "Had Enough", "adalet": "Justice",
    "dindar": "Faith", "inanç": "Faith",
    "deprem": "OTHER_CONCEPT", "göç": "OTHER_CONCEPT",
    "eğitim": "OTHER_CONCEPT", "sağlık": "OTHER_CONCEPT",
}

PUNCT = ".,!?;:\"'()"


def fold_tokens(text):
    # mirrors the scanner: ASCII-only lowercasing, edge punctuation strip
    folded = "".join(chr(ord(c) + 32) if "A" <= c <= "Z" else c for c in text)
    tokens = []
    for tok in folded.split():
        tok = tok.strip(PUNCT)
        if tok:
            tokens.append(tok)
    return tokens


def keyword_hits(text):
    cands, concepts = [], []
    for tok in fold_tokens(text):
        for kw, label in CANDIDATE_KEYWORDS.items():
            if tok.startswith(kw):
                cands.append(label)
                break
        for kw, emitted in CONCEPT_KEYWORDS.items():
            if tok.startswith(kw):
                concepts.append(emitted)
                break
    return cands, concepts


# ---------------------------------------------------------------------------
# phrase banks; every entry is audited against the keyword tables

ANSWERS = {
    "RTE": [
        "Erdoğan'a oy vereceğim.",
        "Oyum Erdoğan'a tabii.",
        "Tabii ki Erdoğan.",
        "Yine Erdoğan diyorum.",
        "Tayyip beye vereceğim.",
        "Recep Tayyip Erdoğan diyorum.",
        "Oyum tayyip beye gidecek.",
    ],
    "KK": [
        "Kılıçdaroğlu'na vereceğim.",
        "Oyum Kemal beye.",
        "Bu sefer Kılıçdaroğlu.",
        "Kemal Kılıçdaroğlu diyorum.",
        "Altılı masanın adayına yani Kılıçdaroğlu'na.",
        "Oyum Kılıçdaroğlu'na gidecek.",
    ],
    "INCE": [
        "Muharrem beye vereceğim.",
        "Oyum muharrem inceye.",
        "Bu sefer ince diyorum.",
        "Muharrem hoca alır oyumu.",
        "Ben inceye vereceğim.",
    ],
    "UNDECIDED": [
        "Daha kararsızım.",
        "Valla kararsızım henüz.",
        "Açıkçası hala kararsızım.",
        "Kararsızım daha bakacağız.",
    ],
    "PURE_OTHER": [
        "Cem Uzan'a vereceğim.",
        "Oyum Sinan Oğan'a.",
        "Demirtaş'a vereceğim.",
        "Ben Oğan diyorum.",
    ],
}

REASONS = {
    "Leadership": [
        "Çünkü gerçek bir lider.",
        "Güçlü lider lazım bize.",
        "Adam liderlik yapıyor.",
        "Karizması yeter bana.",
        "Adamın karizması var.",
        "Dünya çapında bir devlet adamı.",
        "Dünya onu tanıyor.",
    ],
    "Change": [
        "Artık bir değişim şart.",
        "Bu ülkeye değişim lazım.",
        "Değişim vakti geldi.",
        "Yenilik istiyoruz artık.",
        "Yenilikçi biri gelsin.",
    ],
    "Economy": [
        "Ekonomi çok kötü durumda.",
        "Ekonomiyi düzeltir diye düşünüyorum.",
        "Ekonomi herkesi eziyor.",
        "Pahalılıktan geçilmiyor.",
        "Bu pahalılık bitsin artık.",
    ],
    "Development": [
        "Ülke onunla kalkındı.",
        "Kalkınma devam etsin istiyorum.",
        "Yollar köprüler hep kalkınma.",
    ],
    "Honesty": [
        "Dürüst bir insan.",
        "En azından dürüst biri.",
        "Dürüstlüğüne inanıyorum.",
    ],
    "Stability": [
        "Bize istikrar lazım.",
        "Ülkede istikrar devam etsin.",
        "Oyum istikrardan yana.",
    ],
    "Intimacy": [
        "Halkın sevgisi var ona.",
        "Millet onu sevgiyle anıyor.",
        "Bizde ona büyük sevgi var.",
    ],
    "Reliable": [
        "Ona güveniyorum.",
        "Güvenilir biri.",
        "Bize güven veriyor.",
    ],
    "Persistence": [
        "Yıllardır mücadele ediyor.",
        "Mücadelesi ortada.",
        "Onca baskıya rağmen mücadele etti.",
    ],
    "Had Enough": [
        "Bıktık artık bu düzenden.",
        "Bıktık yani hep aynı şeyler.",
        "Bıktık usandık.",
    ],
    "Justice": [
        "Adalet gelecek onunla.",
        "Adaletli olacağına inanıyorum.",
        "Herkese adalet diyor.",
    ],
    "Faith": [
        "Dindar bir insan.",
        "Dindar kimliği önemli benim için.",
        "Bizim gibi inançlı biri.",
        "Adam inançlı ondan.",
    ],
    "OTHER_CONCEPT": [
        "Deprem bölgesine sahip çıktı.",
        "Depremde yanımızda oldu.",
        "Göçmen meselesini çözecek.",
        "Göç sorununu o çözer.",
        "Eğitime önem veriyor.",
        "Eğitim politikaları daha iyi.",
        "Sağlık sistemini düzeltecek.",
        "Sağlıkta işler düzelir onunla.",
    ],
}

DEFLECTIONS = [
    "Yorum yok.",
    "Söylemek istemiyorum.",
    "Orasını söylemeyeyim.",
    "Canım öyle istiyor.",
    "Sebep belirtmeyeyim.",
]

UNDECIDED_FOLLOWUPS = [
    "Daha karar vermedim.",
    "İkisine de bakıyorum hala.",
    "Son güne kadar düşüneceğim.",
]

FILLERS = [
    "Yani açıkçası uzun zamandır böyle düşünüyorum.",
    "Memleket meselesi bu basit değil.",
    "Bizim mahallede herkes böyle konuşuyor.",
    "Gençler için de öyle daha iyi olur.",
    "Sonuçta herkesin fikri kendine.",
    "Geçen seçimde de aynı oyu kullandım.",
    "Şu an başka bir seçenek göremiyorum.",
    "Allah milletimize hayırlısını versin.",
]

REPORTER_OPENERS = [
    "Kime oy vereceksiniz?",
    "Bu seçimde tercihiniz kim?",
    "Pazar günü sandıkta kimi işaretleyeceksiniz?",
    "Cumhurbaşkanlığı için kimi düşünüyorsunuz?",
    "Oyunuzu kime vereceksiniz?",
]
REPORTER_WHY = ["Neden?", "Sebebi nedir?", "Neden o?", "Nedenini sorabilir miyim?"]
REPORTER_NEXT = ["Peki siz?", "Siz kime vereceksiniz?", "Ya siz efendim?"]
REPORTER_EXTRA = ["Biraz açar mısınız?", "Peki anladım.", "Son olarak eklemek istediğiniz bir şey var mı?"]
REPORTER_THANKS = ["Teşekkürler.", "Çok teşekkürler.", "Sağ olun görüşmek üzere."]


def audit_banks():
    """Every phrase decodes to exactly its designated keyword class."""
    bad = []

    def check(text, want_cands, want_concepts):
        cands, concepts = keyword_hits(text)
        if cands != want_cands or concepts != want_concepts:
            bad.append(f"{text!r}: candidates {cands}, concepts {concepts}")

    for label, bank in ANSWERS.items():
        expect = "OTHER" if label == "PURE_OTHER" else label
        for text in bank:
            cands, concepts = keyword_hits(text)
            if not cands or set(cands) != {expect} or concepts:
                bad.append(f"{text!r}: candidates {cands}, concepts {concepts}")
    for slot, bank in REASONS.items():
        for text in bank:
            cands, concepts = keyword_hits(text)
            if cands or len(concepts) != 1:
                bad.append(f"{text!r}: candidates {cands}, concepts {concepts}")
            elif slot == "OTHER_CONCEPT" and concepts[0] != "OTHER_CONCEPT":
                bad.append(f"{text!r}: decodes to {concepts[0]}")
            elif slot != "OTHER_CONCEPT" and concepts[0] != slot:
                bad.append(f"{text!r}: decodes to {concepts[0]} not {slot}")
    for text in (DEFLECTIONS + UNDECIDED_FOLLOWUPS + FILLERS + REPORTER_OPENERS
                 + REPORTER_WHY + REPORTER_NEXT + REPORTER_EXTRA + REPORTER_THANKS):
        check(text, [], [])
    if bad:
        raise SystemExit("phrase bank audit failed:\n  " + "\n  ".join(bad))


# ---------------------------------------------------------------------------
# corpus assembly

def deal_pools(rng):
    pools = {}
    for name, slots in (("RTE", RTE_SLOTS), ("KK", KK_SLOTS),
                        ("INCE", INCE_SLOTS), ("OTHER", OTHER_SLOTS)):
        pool = [slot for slot, n in slots for _ in range(n)]
        rng.shuffle(pool)
        pools[name] = pool
    return pools


class Citizen:
    def __init__(self, candidate, slot):
        self.candidate = candidate  # ground-truth candidate token
        self.slot = slot            # concept slot name or special


def plan_video(vid, counts, pools, rng):
    rte, kk, ince, other = counts
    citizens = []
    citizens += [Citizen("RTE", pools["RTE"].pop()) for _ in range(rte)]
    citizens += [Citizen("KK", pools["KK"].pop()) for _ in range(kk)]
    if vid == OVERRIDE_VIDEO:
        citizens += [Citizen("INCE", "NO_REASON") for _ in range(ince)]
    else:
        citizens += [Citizen("INCE", pools["INCE"].pop()) for _ in range(ince)]
    citizens += [Citizen("OTHER", pools["OTHER"].pop()) for _ in range(other)]
    rng.shuffle(citizens)

    interviews = []
    i = 0
    while i < len(citizens):
        size = min(rng.choices([1, 2, 3], weights=[55, 33, 12])[0],
                   len(citizens) - i)
        interviews.append(citizens[i:i + size])
        i += size
    return interviews


def format_ts(seconds):
    if seconds >= 3600:
        return f"{seconds // 3600:02d}:{seconds % 3600 // 60:02d}:{seconds % 60:02d}"
    return f"{seconds // 60:02d}:{seconds % 60:02d}"


class Dialogue:
    """Accumulates utterances and renders both caption conditions."""

    def __init__(self, rng):
        self.rng = rng
        self.t = 4 + rng.randrange(5)
        self.raw_t = self.t
        self.segments = []  # list of list of (start, speaker, text)
        self.current = []

    def say(self, speaker, text):
        words = len(text.split())
        self.current.append((self.t, speaker, text))
        self.t += max(2, round(words * 0.45)) + self.rng.randrange(3)

    def end_segment(self):
        self.segments.append(self.current)
        self.current = []
        self.t += 3 + self.rng.randrange(6)

    def render_processed(self):
        out = []
        for idx, seg in enumerate(self.segments):
            if idx:
                out.append("---")
            for start, speaker, text in seg:
                tag = "Reporter:" if speaker == 0 else f"Citizen {speaker}:"
                out.append(f"[{format_ts(start)}] {tag} {text}")
        return "\n".join(out) + "\n"

    def render_raw(self):
        cues = []
        for seg in self.segments:
            for start, _speaker, text in seg:
                words = rawify(text).split()
                self.raw_t = max(self.raw_t, start)
                while words:
                    n = self.rng.randrange(5, 9)
                    cues.append((self.raw_t, " ".join(words[:n])))
                    words = words[n:]
                    self.raw_t += 2
        return "\n".join(f"{format_ts(t)} {text}" for t, text in cues) + "\n"


RAW_LOWER = str.maketrans("İIÇĞÖŞÜ", "iıçğöşü")


def rawify(text):
    # auto-caption flavor: no punctuation, apostrophes fused, all lowercase
    text = text.replace("'", "").translate(RAW_LOWER)
    text = "".join(c for c in text if c not in ".,!?")
    return "".join(chr(ord(c) + 32) if "A" <= c <= "Z" else c for c in text)


def script_interview(dlg, interview, rng):
    """Emit one interview segment; returns per-citizen (reason, persona)."""
    notes = []
    for pos, citizen in enumerate(interview, start=1):
        if pos == 1:
            dlg.say(0, rng.choice(REPORTER_OPENERS))
        else:
            dlg.say(0, rng.choice(REPORTER_NEXT))
        dlg.say(pos, rng.choice(ANSWERS["UNDECIDED" if citizen.slot == "UNDECIDED"
                                        else "PURE_OTHER" if citizen.slot == "PURE_OTHER"
                                        else citizen.candidate]))
        reason_text = ""
        if citizen.slot in REASONS:
            dlg.say(0, rng.choice(REPORTER_WHY))
            reason_text = rng.choice(REASONS[citizen.slot])
            dlg.say(pos, reason_text)
        elif citizen.slot == "UNDECIDED":
            if rng.random() < 0.6:
                dlg.say(0, rng.choice(REPORTER_WHY))
                dlg.say(pos, rng.choice(UNDECIDED_FOLLOWUPS))
        elif rng.random() < 0.5:  # no-reason citizens sometimes get asked anyway
            dlg.say(0, rng.choice(REPORTER_WHY))
            dlg.say(pos, rng.choice(DEFLECTIONS))
        if rng.random() < 0.25:
            dlg.say(0, rng.choice(REPORTER_EXTRA))
            dlg.say(pos, rng.choice(FILLERS))
        notes.append(reason_text)
    if rng.random() < 0.4:
        dlg.say(0, rng.choice(REPORTER_THANKS))
    dlg.end_segment()
    return notes


def ground_truth_row(vid, interview_idx, citizen_idx, citizen, reason_text):
    if citizen.slot in REASONS and citizen.slot != "OTHER_CONCEPT":
        concept = citizen.slot
    elif citizen.slot == "OTHER_CONCEPT":
        concept = "Other"
    elif citizen.slot == "UNDECIDED":
        concept = "Undecided"
    else:
        concept = ""
    return f"{vid}\t{interview_idx}\t{citizen_idx}\t{citizen.candidate}\t{concept}\t{reason_text}"


def verify_decoding(vid, interviews, gt_rows):
    """Mirror the mock scanner over the scripted dialogue and compare."""
    # gt_rows: list of (interview_idx, citizen_idx, candidate, concept)
    by_key = {(i, c): (cand, concept) for i, c, cand, concept in gt_rows}
    for seg_idx, (interview, dlg_seg) in enumerate(interviews, start=1):
        for pos in range(1, len(interview) + 1):
            cands, concepts = [], []
            for _start, speaker, text in dlg_seg:
                if speaker != pos:
                    continue
                c1, c2 = keyword_hits(text)
                cands += c1
                concepts += c2
            want_cand, want_concept = by_key[(seg_idx, pos)]
            scanned = cands[0] if cands else None
            expect = "UNDECIDED" if want_cand == "OTHER" and want_concept == "Undecided" else want_cand
            if scanned != expect:
                raise SystemExit(f"{vid} {seg_idx}.{pos}: scanner sees candidate "
                                 f"{scanned}, ground truth {expect}")
            scanned_concept = concepts[0] if concepts else None
            if want_concept in ("", "Undecided"):
                ok = scanned_concept is None
            elif want_concept == "Other":
                ok = scanned_concept == "OTHER_CONCEPT"
            else:
                ok = scanned_concept == want_concept
            if not ok:
                raise SystemExit(f"{vid} {seg_idx}.{pos}: scanner sees concept "
                                 f"{scanned_concept}, ground truth {want_concept}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--root", type=Path,
                        default=Path(__file__).resolve().parent.parent / "data" / "demo")
    parser.add_argument("--seed", type=int, default=20230514)
    args = parser.parse_args()

    audit_banks()
    rng = random.Random(args.seed)
    pools = deal_pools(rng)

    root = args.root
    (root / "captions").mkdir(parents=True, exist_ok=True)
    (root / "templates").mkdir(parents=True, exist_ok=True)

    manifest = ["# 2023 presidential street-interview demo corpus (synthetic)",
                "ground_truth = ground_truth.tsv",
                "concepts = concepts.txt",
                "merge_map = merge_map.txt"]
    gt_lines = ["video_id\tinterview\tcitizen\tcandidate\tconcept\treason"]
    total = 0

    for vid, location, channel, counts in VIDEOS:
        interviews = plan_video(vid, counts, pools, rng)
        dlg = Dialogue(rng)
        dlg.say(0, f"Merhaba bugün {location} sokaklarındayız.")
        scripted = []
        gt_check = []
        for seg_idx, interview in enumerate(interviews, start=1):
            reasons = script_interview(dlg, interview, rng)
            scripted.append((interview, dlg.segments[-1]))
            for pos, (citizen, reason_text) in enumerate(zip(interview, reasons), start=1):
                gt_lines.append(ground_truth_row(vid, seg_idx, pos, citizen, reason_text))
                row = gt_lines[-1].split("\t")
                gt_check.append((seg_idx, pos, row[3], row[4]))
                total += 1
        verify_decoding(vid, scripted, gt_check)

        (root / "captions" / f"{vid}.processed.txt").write_text(
            dlg.render_processed(), encoding="utf-8")
        (root / "captions" / f"{vid}.raw.txt").write_text(
            dlg.render_raw(), encoding="utf-8")

        manifest += ["", "[video]", f"video_id = {vid}", f"channel = {channel}",
                     f"location = {location}",
                     f"captions = captions/{vid}.raw.txt, captions/{vid}.processed.txt"]
        if vid == OVERRIDE_VIDEO:
            manifest.append("overrides = INCE=OTHER")

    for name, slots in (("RTE", RTE_SLOTS), ("KK", KK_SLOTS),
                        ("INCE", INCE_SLOTS), ("OTHER", OTHER_SLOTS)):
        if pools[name]:
            raise SystemExit(f"{name} pool not exhausted: {len(pools[name])} left")
    if total != 325:
        raise SystemExit(f"expected 325 respondents, scripted {total}")

    (root / "manifest.txt").write_text("\n".join(manifest) + "\n", encoding="utf-8")
    (root / "ground_truth.tsv").write_text("\n".join(gt_lines) + "\n", encoding="utf-8")
    (root / "concepts.txt").write_text(CONCEPTS_TXT, encoding="utf-8")
    (root / "merge_map.txt").write_text(MERGE_MAP_TXT, encoding="utf-8")
    (root / "templates" / "tr.txt").write_text(TR_TEMPLATE, encoding="utf-8")
    print(f"wrote {len(VIDEOS)} videos, {total} respondents -> {root}")


if __name__ == "__main__":
    sys.exit(main())
