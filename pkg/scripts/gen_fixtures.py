#!/usr/bin/env python3
"""Regenerates the demo fixtures under fixtures/.

Every designed outcome is verified against the real analyzers before
anything is written: mirror items verify at ratio 1.0, the two spun
items land on 4/6 and 2/6, the inflammatory item trips the tone
thresholds, the shouty item fails writing quality, media pairs match
within the hash thresholds and unrelated media stay safely apart.
Run from the repository root:  python3 scripts/gen_fixtures.py
"""

from __future__ import annotations

import json
import sys
from importlib import resources
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from provkit.media_analysis import dhash64, hamming, ncc, resample  # noqa: E402
from provkit.pnm import write_pnm  # noqa: E402
from provkit.text_similarity import SubjectivityLexicon, TextSimilarityDetector  # noqa: E402
from provkit.tone import EmotionLexicon, ToneThresholds, assess as tone_assess, score_emotions  # noqa: E402
from provkit.writing_quality import LowQualityTerms, WqsConfig, compute_wqs  # noqa: E402

FIXTURES = ROOT / "fixtures"
MEDIA = FIXTURES / "media"
CORPUS = FIXTURES / "corpus"

# --------------------------------------------------------------------------
# article bodies: mirrors are shipped to both the feed and the corpus
# --------------------------------------------------------------------------

BODIES = {
    "p01": "The city council approved the transit budget on Monday. The plan allocates 40 million euros to public transit. Construction of the new tram line begins in March. The project adds 12 kilometers of track across four districts. Officials said the work should finish within three years. The federal government covers half of the total cost.",
    "p02": "Regional health authorities opened three additional vaccine distribution centres this week. The new sites operate six days per week in the northern districts. Appointments are scheduled through the existing national booking platform. Each centre can administer up to nine hundred doses daily. Cold storage units arrived from the central depot on Tuesday. Staffing is provided by rotating teams of local nurses.",
    "p03": "The port authority completed the first phase of the harbor renovation. Engineers replaced the oldest pier with a reinforced concrete structure. Cargo capacity increases by a fifth under the revised layout. Dredging of the main channel concluded in late June. The ferry terminal remains open during the second phase. A final inspection is scheduled for early December.",
    "p04": "The regional utility connected a new solar array to the grid on Thursday. The installation spans sixty hectares of former industrial land. Peak output reaches forty megawatts under clear conditions. Engineers completed the substation upgrade ahead of schedule. Household tariffs remain unchanged through the end of the year. A second array is planned for the adjacent parcel.",
    "p05": "The maritime museum reopened its east wing after fourteen months of restoration. Curators rearranged the permanent collection across nine galleries. The renovation preserved the original oak flooring from 1911. Admission prices stay at their previous levels for residents. School groups return to the lecture hall in September. The west wing closes next for similar treatment.",
    "p07": "The county extended opening hours at its two largest vaccination clinics. Evening slots run until nine on weekdays starting next Monday. Demand rose after the booster campaign for older residents began. The health board added four mobile units for outlying villages. Supplies of the updated vaccine arrived in sufficient quantity. Waiting times currently average under fifteen minutes.",
    "p08": "Civil defence teams rehearsed the river flood response on Saturday morning. Four hundred volunteers took part across three riverside districts. The exercise tested the new barrier segments along the quay. Sirens and text alerts reached residents within four minutes. Evacuation buses followed the routes published in the spring. A full report goes to the safety committee next month.",
    "p09": "The electoral office published the updated polling station list on Friday. Seventeen stations moved to more accessible ground floor venues. Postal ballot requests rose by a tenth compared with the last cycle. Counting takes place in the renovated exhibition hall. Provisional results are expected before midnight on election day. Observer accreditation closes at the end of the month.",
    "p10": "The school board approved the renovation plan for six primary schools. Work begins with roof repairs during the summer break. Classrooms receive new ventilation units by the autumn term. The budget draws on the municipal maintenance reserve. Two schools gain additional rooms for after school care. Parents receive the detailed schedule by post this week.",
    "p11": "University researchers published enrollment figures for the regional vaccine study. The trial follows twelve hundred adult participants over two years. Half of the cohort received the adjusted formulation last quarter. Early safety monitoring reported no unexpected findings so far. The research consortium includes four teaching hospitals. Interim results are scheduled for release next spring.",
    "p12": "The summer festival returns to the riverside park for its twentieth edition. Organisers expanded the programme to five stages this year. Local food vendors occupy the northern meadow as before. Shuttle buses run from the central station every ten minutes. The closing concert takes place on the main stage at sunset. Ticket sales opened at noon and continue online.",
    "p15": "The meteorological office issued its seasonal outlook on Monday. Average temperatures run slightly above the long term mean. Rainfall stays near normal across the central lowlands. The coastal service updated its small craft guidance for the autumn. New radar coverage begins operating from the eastern station. Monthly bulletins continue on the first working day.",
    "p17": "The athletics federation confirmed the autumn marathon route on Tuesday. The course follows the river before turning through the old town. Around nine thousand runners registered during the first window. Road closures begin at five in the morning and lift by afternoon. Water stations stand every two and a half kilometers. Volunteer briefings take place at the arena next weekend.",
    "p18": "The municipal library extended its lending period to four weeks. The change follows a review of borrowing patterns since 2023. Digital loans now renew automatically unless reserved by another reader. The branch in the harbor district gains Sunday opening hours. A new catalogue interface launches at the end of the month. Late fees remain suspended for children's titles.",
    "p19": "Engineers began the scheduled inspection of the canal bridge on Monday. The survey covers the bearings, the deck joints and the cable anchors. One traffic lane stays open in each direction during the works. Night closures are limited to two weekends in September. The previous inspection five years ago required only minor repairs. Results will be published in the public works registry.",
    "p20": "The university observatory installed its upgraded spectrograph last week. The instrument doubles the resolution available for stellar surveys. First calibration runs used the standard reference lamps. Observing time applications open to regional schools in October. The dome mechanism received new drive motors during the installation. A public open evening follows the commissioning phase.",
}

TITLES = {
    "p01": "Council approves transit budget",
    "p02": "Three new vaccine centres open in northern districts",
    "p03": "Harbor renovation completes first phase",
    "p04": "Solar array joins regional grid",
    "p05": "Maritime museum reopens east wing",
    "p06": "Cycling network plan moves ahead",
    "p07": "Vaccination clinics extend evening hours",
    "p08": "Flood response exercise held along the river",
    "p09": "Polling station list updated ahead of election",
    "p10": "Six primary schools scheduled for renovation",
    "p11": "Regional vaccine study reports enrollment figures",
    "p12": "Summer festival returns for twentieth edition",
    "p13": "They are hiding the truth about the water supply",
    "p14": "Northern plains harvest estimate released",
    "p15": "Seasonal weather outlook published",
    "p16": "BREAKING!!! What YOUR council is HIDING",
    "p17": "Marathon route confirmed for autumn race",
    "p18": "Library extends lending period to four weeks",
    "p19": "Canal bridge inspection under way",
    "p20": "Observatory commissions upgraded spectrograph",
}

SPUN_P06_ORIGINAL = (
    "Transport planners presented the updated cycling network on Wednesday. "
    "The first corridor links the central station with the university campus. "
    "Protected lanes cover eleven kilometers of the proposed route. "
    "The council reviews the funding package at its August session. "
    "Local businesses along the corridor were consulted during the design. "
    "Completion of the first corridor is expected within two years."
)
SPUN_P06_FEED = (
    "Transport planners presented the updated cycling network on Wednesday. "
    "Leaked memos name the developers who dictated the corridor in advance. "
    "Protected lanes cover eleven kilometers of the proposed route. "
    "Unnamed insiders insist the funding package was settled in private. "
    "Local businesses along the corridor were consulted during the design. "
    "Completion of the first corridor is expected within two years."
)

SPUN_P14_ORIGINAL = (
    "The agricultural agency released its harvest estimate for the northern plains. "
    "Grain yields come in four percent above the five year average. "
    "Storage capacity at the regional silos was expanded in July. "
    "Rail operators added weekend freight slots for the season. "
    "Export contracts cover roughly a third of the expected volume. "
    "The final tally arrives after the October weighings."
)
SPUN_P14_FEED = (
    "The agricultural agency released its harvest estimate for the northern plains. "
    "Whistleblowers allege the real figures were buried by ministry officials. "
    "Witnesses report convoys moving unmarked sacks across the border at night. "
    "An anonymous letter names three executives in a price fixing ring. "
    "Leaked spreadsheets reportedly show phantom shipments to shell companies. "
    "The final tally arrives after the October weighings."
)

INFLAMMATORY_BODY = (
    "A terrifying threat is spreading through the water supply while officials stay silent. "
    "Insiders fear a deadly coverup orchestrated by the same corrupt network that betrayed this city before. "
    "Residents describe panic in the streets and rage at every public meeting. "
    "The authorities dismiss the alarm as rumor while the danger grows by the hour. "
    "This outrage will not fade until the traitors face the fury they deserve. "
    "Doubt everything the official channels tell you about this catastrophe."
)

SHOUTY_BODY = (
    "BREAKING!!! THEY don't WANT you to KNOW this one weird trick the council uses!! "
    "Wake up sheeple, the mainstream media lies about EVERYTHING in your city!!! "
    "This EXPLOSIVE bombshell will shock you and it has already gone viral online?! "
    "Click NOW before they DELETE this must read EXPOSED report!!!"
)

FILLER_BODIES = {
    "wire-01": ("Ferry timetable adjusted for winter", "The ferry operator published the winter timetable on Friday. Crossings drop from ten to eight per day. The first departure moves to six in the morning. Freight bookings continue through the usual portal."),
    "wire-02": ("Hospital wing gains new imaging suite", "The central hospital opened its new imaging suite on Monday. Two scanners replace the units installed a decade ago. Appointment capacity rises by a quarter. Referrals continue through regional practices."),
    "wire-03": ("Rail upgrade enters second stage", "Track renewal on the eastern line entered its second stage. Crews replace nine kilometers of rail by November. Replacement buses serve three stations at weekends. The operator publishes weekly progress updates."),
    "wire-04": ("City archive digitises council records", "The city archive completed digitising council minutes from 1950 onward. Researchers access the scans through the reading room portal. Originals move to climate controlled storage. The next batch covers planning records."),
    "wire-05": ("Airport resurfaces secondary runway", "The regional airport began resurfacing its secondary runway. Night works run from Tuesday to Friday for six weeks. Daytime operations continue on the main runway. Noise monitoring reports are published monthly."),
    "wire-06": ("Botanical garden opens alpine house", "The botanical garden opened its rebuilt alpine house to visitors. The collection holds over four hundred mountain species. Entry is included in the standard garden ticket. Guided tours run twice daily in summer."),
    "wire-07": ("Recycling centre extends weekend hours", "The northern recycling centre extends its weekend opening hours. Saturday service now runs from eight until six. Electronic waste moves to a dedicated lane. Vehicle queues fell after the booking system launch."),
    "wire-08": ("Theatre season programme announced", "The municipal theatre announced its autumn season on Thursday. The programme lists fourteen productions across two stages. Season passes go on sale next week. Student rates apply to all weekday performances."),
    "wire-09": ("Harbor ferry gains electric vessel", "The harbor ferry line took delivery of its first electric vessel. The ship carries two hundred passengers per crossing. Charging equipment was installed at both terminals. Sea trials conclude at the end of the month."),
    "wire-10": ("Census field work begins in spring", "The statistics office confirmed the census field phase for next spring. Enumerators visit households that skip the online form. The questionnaire keeps the format used five years ago. First results appear the following winter."),
    "wire-11": ("Water utility replaces mains in old town", "The water utility began replacing cast iron mains in the old town. The programme covers six streets before December. Supply interruptions are limited to overnight windows. Residents receive notice two days in advance."),
    "wire-12": ("Court house restoration reaches roof stage", "Restoration of the nineteenth century court house reached the roof stage. Slates from the original quarry match the historic pattern. Scaffolding comes down in early November. The building reopens to the public next year."),
    "wire-13": ("Tram depot solar roof comes online", "The tram depot connected its rooftop solar plant this week. Panels cover the full maintenance hall roof. Output feeds the depot and the adjacent substation. The operator expects to cover a fifth of depot demand."),
    "wire-14": ("Food inspection results published", "The food safety agency published its quarterly inspection results. Compliance rose for the third consecutive quarter. Repeat visits focus on cold chain documentation. The full dataset is available in the open data portal."),
}


def make_image(rng: np.random.Generator, width: int, height: int) -> np.ndarray:
    base = rng.integers(40, 206, size=(height // 8 + 1, width // 8 + 1)).astype(np.float64)
    rows = np.linspace(0, base.shape[0] - 1, height)
    cols = np.linspace(0, base.shape[1] - 1, width)
    img = base[np.ix_(np.floor(rows).astype(int), np.floor(cols).astype(int))]
    noise = rng.normal(0, 4, size=(height, width))
    return np.clip(img + noise, 20, 215).astype(np.uint8)


def build_media() -> dict[str, np.ndarray | list[np.ndarray]]:
    rng = np.random.default_rng(2026)
    media = {
        "img_a": make_image(rng, 256, 256),
        "img_b": make_image(rng, 256, 256),
        "img_c": make_image(rng, 256, 256),
        "video_a": [make_image(rng, 128, 128) for _ in range(6)],
        "video_b": [make_image(rng, 128, 128) for _ in range(6)],
    }
    manip = media["img_b"].astype(np.int16).copy()
    manip[96:160, 64:128] += 35  # block-aligned 64x64 local edit
    media["img_b_manip"] = np.clip(manip, 0, 255).astype(np.uint8)
    return media


def check_media(media) -> None:
    hashes = {}
    for name, item in media.items():
        frames = item if isinstance(item, list) else [item]
        hashes[name] = [dhash64(f) for f in frames]
    # unrelated media must not collide within the search radius
    names = [n for n in hashes if n != "img_b_manip"]
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            d = min(hamming(x, y) for x in hashes[a] for y in hashes[b])
            assert d > 16, f"{a} vs {b} too close: {d}"
    # the manipulated image must still match its original
    d = hamming(hashes["img_b"][0], hashes["img_b_manip"][0])
    assert d <= 10, f"manipulated image drifted too far: {d}"
    corr = ncc(resample(media["img_b"], 64, 64), resample(media["img_b_manip"], 64, 64))
    assert corr >= 0.92, f"geometric validation margin too small: {corr}"


def feed_items() -> list[dict]:
    def item(pid, topic=None, concept=None, category=None, images=(), videos=(), likes=0, shares=0, comments=0, body=None, publisher="Example News"):
        return {
            "url": f"https://news.example.org/{pid}",
            "title": TITLES[pid],
            "summary": TITLES[pid] + ".",
            "body": body if body is not None else BODIES[pid],
            "image_refs": [f"media/{name}.pgm" for name in images],
            "video_refs": [f"media/{name}" for name in videos],
            "publisher": publisher,
            "published_at": f"2026-07-{int(pid[1:]):02d}T09:00:00Z",
            "likes": likes,
            "shares": shares,
            "comments": comments,
            **({"topic": topic} if topic else {}),
            **({"concept": concept} if concept else {}),
            **({"category": category} if category else {}),
        }

    return [
        item("p01", topic="politics", concept="society", category="local-government", likes=42, shares=11, comments=5),
        item("p02", topic="health", concept="society", category="public-health", likes=120, shares=44, comments=10),
        item("p03", images=("img_a",), likes=18, shares=3, comments=1),
        item("p04", topic="energy", likes=33, shares=9, comments=2),
        item("p05", images=("img_b",), likes=27, shares=5, comments=3),
        item("p06", topic="politics", body=SPUN_P06_FEED, publisher="Daily Spin Online", likes=310, shares=190, comments=77),
        item("p07", topic="health", concept="society", category="public-health", likes=95, shares=30, comments=12),
        item("p08", videos=("video_a",), likes=51, shares=14, comments=6),
        item("p09", topic="politics", images=("img_a",), publisher="Metro Mirror", likes=240, shares=98, comments=41),
        item("p10", likes=12, shares=2, comments=0),
        item("p11", topic="health", concept="science", category="research", likes=64, shares=21, comments=8),
        item("p12", images=("img_b_manip",), publisher="Metro Mirror", likes=410, shares=260, comments=120),
        item("p13", body=INFLAMMATORY_BODY, publisher="Daily Spin Online", likes=890, shares=640, comments=310),
        item("p14", body=SPUN_P14_FEED, publisher="Daily Spin Online", likes=520, shares=340, comments=150),
        item("p15", videos=("video_a",), publisher="Metro Mirror", likes=75, shares=26, comments=9),
        item("p16", body=SHOUTY_BODY, publisher="Daily Spin Online", likes=1300, shares=990, comments=450),
        item("p17", videos=("video_b",), likes=38, shares=7, comments=4),
        item("p18", likes=22, shares=4, comments=1),
        item("p19", likes=16, shares=3, comments=0),
        item("p20", topic="science", likes=29, shares=6, comments=2),
    ]


def corpus_docs() -> list[dict]:
    docs = [
        {"doc_id": f"trusted-{pid}", "title": TITLES[pid], "body": BODIES[pid]}
        for pid in sorted(BODIES)
    ]
    docs.append({"doc_id": "trusted-p06", "title": "Cycling network plan presented", "body": SPUN_P06_ORIGINAL})
    docs.append({"doc_id": "trusted-p14", "title": "Harvest estimate for northern plains", "body": SPUN_P14_ORIGINAL})
    for doc_id, (title, body) in sorted(FILLER_BODIES.items()):
        docs.append({"doc_id": doc_id, "title": title, "body": body})
    return docs


def check_text(items, docs) -> None:
    lexicon = SubjectivityLexicon.load(resources.files("provkit").joinpath("data/lexicons/subjectivity.tsv"))
    emotions = EmotionLexicon.load(resources.files("provkit").joinpath("data/lexicons/emotions.tsv"))
    terms = LowQualityTerms.load(resources.files("provkit").joinpath("data/lexicons/low_quality_terms.txt"))
    detector = TextSimilarityDetector(lexicon)
    for doc in docs:
        detector.index_article(doc["doc_id"], doc["title"], doc["body"])

    by_id = {it["url"].rsplit("/", 1)[1]: it for it in items}
    # exactly three feed items mention vaccines
    vaccine_hits = [pid for pid, it in sorted(by_id.items()) if "vaccine" in (it["title"] + it["body"]).lower()]
    assert vaccine_hits == ["p02", "p07", "p11"], vaccine_hits

    for pid, it in sorted(by_id.items()):
        verdict = detector.verify(it["title"], it["body"])
        if pid in BODIES:  # mirrored items verify fully
            assert verdict.status == "pass" and verdict.ratio == 1.0, (pid, verdict.ratio)
        profile = score_emotions(it["title"] + "\n" + it["body"], emotions)
        tone_result = tone_assess(profile, ToneThresholds())
        wq = compute_wqs(it["title"] + "\n" + it["body"], terms, WqsConfig())
        if pid == "p13":
            assert tone_result.status == "caution", tone_result
        elif pid != "p16":
            assert tone_result.status == "pass", (pid, tone_result.evidence)
        if pid == "p16":
            assert wq.wqs < 50.0, wq
        else:
            assert wq.wqs >= 50.0, (pid, wq)

    spun6 = detector.verify(TITLES["p06"], SPUN_P06_FEED)
    assert spun6.verified_facts == 4 and spun6.total_facts == 6 and spun6.status == "pass", spun6
    spun14 = detector.verify(TITLES["p14"], SPUN_P14_FEED)
    assert spun14.verified_facts == 2 and spun14.total_facts == 6 and spun14.status == "caution", spun14
    assert abs(spun14.score - 1 / 3) < 1e-3, spun14.score


def write_all() -> None:
    media = build_media()
    check_media(media)
    items = feed_items()
    docs = corpus_docs()
    check_text(items, docs)

    MEDIA.mkdir(parents=True, exist_ok=True)
    CORPUS.mkdir(parents=True, exist_ok=True)
    for name in ("img_a", "img_b", "img_c", "img_b_manip"):
        write_pnm(MEDIA / f"{name}.pgm", media[name])
    for name in ("video_a", "video_b"):
        vdir = MEDIA / name
        vdir.mkdir(exist_ok=True)
        for i, frame in enumerate(media[name]):
            write_pnm(vdir / f"frame_{i:02d}.pgm", frame)

    with open(FIXTURES / "feed.ndjson", "w", encoding="utf-8") as fh:
        for it in items:
            fh.write(json.dumps(it) + "\n")
    for doc in docs:
        (CORPUS / f"{doc['doc_id']}.json").write_text(json.dumps(doc, indent=2), encoding="utf-8")

    ui_dir = ROOT / "frontend" / "public"
    if ui_dir.is_dir():
        posts = [
            {
                "post_id": it["url"].rsplit("/", 1)[1],
                "url": it["url"],
                "title": it["title"],
                "publisher": it["publisher"],
                "snippet": " ".join(it["body"].split()[:28]) + " ...",
                "thumbnail_ref": (it["image_refs"] or it["video_refs"] or [None])[0],
            }
            for it in items
        ]
        (ui_dir / "feed.json").write_text(json.dumps(posts, indent=2), encoding="utf-8")

    print(f"wrote {len(items)} feed items, {len(docs)} corpus docs, media under {MEDIA}")


if __name__ == "__main__":
    write_all()
