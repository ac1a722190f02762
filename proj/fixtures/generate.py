#!/usr/bin/env python3
"""Regenerates the bundled fixture corpus.

Everything here is synthetic: invented sites, recorded provider replies and
simulated networks. Output is deterministic; re-running rewrites the same
bytes.
"""
import json
import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent
RNG = random.Random(20240601)

THEMES = {
    "rights": [
        "activist", "protest", "detention", "lawyer", "petition", "freedom", "dissident", "prisoner",
        "democracy", "election", "censorship", "journalist", "constitution", "amnesty", "tribunal",
        "movement", "solidarity", "crackdown", "surveillance", "testimony", "campaign", "citizen",
        "arrest", "trial", "parliament", "opposition", "reform", "torture", "rally", "verdict",
    ],
    "circumvention": [
        "vpn", "proxy", "tor", "bridge", "encryption", "firewall", "bypass", "tunnel", "server",
        "anonymity", "privacy", "shadowsocks", "obfuscation", "relay", "download", "client", "protocol",
        "browser", "secure", "mirror", "node", "latency", "bandwidth", "router", "install",
        "subscription", "android", "windows", "config", "wireguard",
    ],
    "religion": [
        "meditation", "temple", "monk", "pilgrimage", "scripture", "tibet", "lama", "persecution",
        "faith", "worship", "prayer", "monastery", "buddhist", "dharma", "church", "believer",
        "sermon", "spiritual", "gospel", "practitioner", "exile", "teaching", "ritual", "shrine",
        "nun", "mantra", "congregation", "pastor", "bible", "doctrine",
    ],
    "gambling": [
        "casino", "poker", "betting", "jackpot", "roulette", "slot", "wager", "bookmaker", "odds",
        "lottery", "blackjack", "bonus", "payout", "tournament", "dealer", "chips", "sportsbook",
        "baccarat", "deposit", "withdrawal", "spin", "stake", "gambler", "croupier", "handicap",
        "parlay", "bankroll", "dice", "vip", "promotion",
    ],
}

FILLER = [
    "people", "report", "today", "information", "world", "local", "official", "week", "group",
    "public", "source", "community", "country", "issue", "year", "member", "support", "network",
]
STOP = ["the", "and", "of", "to", "in", "a", "is", "for", "on", "with", "that", "this", "are", "by", "from"]

FRENCH = {
    "rights": {
        "militant": "activist", "manifestation": "protest", "détention": "detention", "avocat": "lawyer",
        "pétition": "petition", "liberté": "freedom", "dissident": "dissident", "prisonnier": "prisoner",
        "démocratie": "democracy", "élection": "election", "censure": "censorship",
        "journaliste": "journalist", "constitution": "constitution", "procès": "trial",
        "arrestation": "arrest", "citoyen": "citizen", "réforme": "reform", "torture": "torture",
    },
    "religion": {
        "méditation": "meditation", "temple": "temple", "moine": "monk", "pèlerinage": "pilgrimage",
        "écriture": "scripture", "tibet": "tibet", "lama": "lama", "persécution": "persecution",
        "foi": "faith", "culte": "worship", "prière": "prayer", "monastère": "monastery",
        "bouddhiste": "buddhist", "église": "church", "croyant": "believer", "exil": "exile",
        "enseignement": "teaching", "rituel": "ritual",
    },
}
FRENCH_STOP = ["le", "la", "les", "de", "des", "et", "pour", "dans", "sur", "avec", "une", "un", "est", "sont", "du", "au"]
FRENCH_FILLER = {"gens": "people", "rapport": "report", "monde": "world", "semaine": "week", "groupe": "group",
                 "public": "public", "pays": "country"}

SPANISH = {
    "gambling": {
        "casino": "casino", "póquer": "poker", "apuesta": "betting", "ruleta": "roulette",
        "lotería": "lottery", "bono": "bonus", "torneo": "tournament", "depósito": "deposit",
        "retiro": "withdrawal", "jugador": "gambler", "dados": "dice", "premio": "jackpot",
        "crupier": "croupier", "promoción": "promotion", "apostador": "gambler", "fichas": "chips",
    },
}
SPANISH_STOP = ["el", "la", "los", "las", "de", "del", "y", "en", "con", "para", "por", "un", "una", "es", "que", "al"]
SPANISH_FILLER = {"gente": "people", "informe": "report", "mundo": "world", "semana": "week", "grupo": "group",
                  "público": "public", "país": "country"}

SOURCE_SITES = {
    "rights": ["rightswatch.org", "freedomvoices.net", "prisonerlist.info", "lawyersforum.org.hk",
               "petitionhub.com", "dissentdaily.co.uk", "electionmonitor.org"],
    "circumvention": ["tunnelvpn.com", "freeproxy.net", "torbridges.org", "fastshadow.io",
                      "securerelay.net", "mirrorlist.info", "privacyguide.com.tw"],
    "religion": ["dharmatalk.org", "templenews.net", "tibetexile.org", "prayerlight.com",
                 "faithwatch.info", "monasterylife.org", "gospelvoice.co.uk"],
    "gambling": ["lucky-casino.com", "pokerstarz.net", "betmaster.com", "jackpotcity.info",
                 "roulettehub.com", "oddsking.co.uk", "slotparadise.net"],
}

INDEX_SITES = {
    "rights": ["humanrightsasia.org", "detentionfiles.net", "amnestyreports.org", "activistnews.com",
               "crackdownwatch.org", "solidaritynet.info", "tribunalrecord.org", "reformnow.net",
               "citizenvoice.org.uk", "testimonyarchive.org"],
    "circumvention": ["vpnreviews.com", "bypassguide.net", "wireguardsetup.io", "proxylists.org",
                      "anonymitytools.net", "encryptnow.com", "routerconfig.info", "tunnelbear-mirror.net",
                      "freedomgate.org", "bridgedb-mirror.org"],
    "religion": ["buddhistdaily.org", "lamateachings.net", "pilgrimroutes.info", "meditationcenter.org",
                 "scripturestudy.com", "churchwatch.org", "shrinemap.net", "mantraaudio.com",
                 "exilevoices.org", "doctrinedigest.org"],
    "gambling": ["casinoreviews.com", "pokerschool.net", "sportsbookodds.com", "lotteryresults.info",
                 "blackjackpro.net", "slotmachines.org", "baccaratguide.com", "bettingtips.co.uk",
                 "jackpotnews.net", "bankrollclub.com"],
}

LLM_EXPANSIONS = {
    "rights": ["human rights", "political prisoners", "free speech", "civil society", "rule of law",
               "press freedom", "hunger strike", "asylum", "whistleblower", "labor rights"],
    "circumvention": ["internet freedom", "censorship circumvention", "great firewall", "vpn service",
                      "proxy server", "secure messaging", "dns over https", "anonymous browsing",
                      "network tunnel", "open source"],
    "religion": ["religious freedom", "falun gong", "dalai lama", "house church", "prayer meeting",
                 "spiritual practice", "religious persecution", "buddhist monastery", "holy scripture",
                 "underground church"],
    "gambling": ["online casino", "sports betting", "poker room", "live dealer", "casino bonus",
                 "betting odds", "slot machines", "lottery tickets", "high roller", "football betting"],
}

TRENDS = {
    "vpn": (["vpn free", "best vpn", "vpn download", "vpn app"], ["vpn for china", "wireguard vpn"]),
    "proxy": (["free proxy", "proxy server", "proxy list"], ["socks5 proxy", "residential proxy"]),
    "protest": (["protest news", "protest today", "peaceful protest"], ["student protest", "protest march"]),
    "activist": (["human rights activist", "activist arrested"], ["climate activist", "activist lawyer"]),
    "casino": (["online casino", "casino bonus", "casino games"], ["crypto casino", "live casino"]),
    "poker": (["online poker", "poker tournament"], ["poker strategy", "poker odds calculator"]),
}


def inflect(word):
    r = RNG.random()
    if r < 0.15 and not word.endswith("s"):
        return word + "s"
    return word


def english_text(theme, n_words, extra=()):
    vocab = THEMES[theme]
    words = []
    while len(words) < n_words:
        sentence = []
        for _ in range(RNG.randint(8, 14)):
            r = RNG.random()
            if r < 0.55:
                sentence.append(inflect(RNG.choice(vocab)))
            elif r < 0.7 and extra:
                sentence.append(RNG.choice(extra))
            elif r < 0.85:
                sentence.append(RNG.choice(STOP))
            else:
                sentence.append(RNG.choice(FILLER))
        sentence[0] = sentence[0].capitalize()
        words.append(" ".join(sentence) + ".")
    return " ".join(words)


def foreign_text(vocab, stop, filler, n_sentences):
    out = []
    for _ in range(n_sentences):
        sentence = []
        for _ in range(RNG.randint(8, 12)):
            r = RNG.random()
            if r < 0.5:
                sentence.append(RNG.choice(list(vocab)))
            elif r < 0.85:
                sentence.append(RNG.choice(stop))
            else:
                sentence.append(RNG.choice(list(filler)))
        sentence[0] = sentence[0].capitalize()
        out.append(" ".join(sentence) + ".")
    return " ".join(out)


def html_page(title, paragraphs):
    nav = "".join(f'<li><a href="/{w}">{w.title()}</a></li>' for w in ["home", "news", "about", "contact"])
    body = "".join(f"<p>{p}</p>" for p in paragraphs)
    return (
        "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>" + title + "</title></head>"
        "<body><header><div class=\"logo\">" + title + "</div><nav><ul>" + nav + "</ul></nav></header>"
        "<article><h1>" + title + "</h1>" + body + "</article>"
        "<footer><p>Copyright 2023. All rights reserved.</p></footer></body></html>\n"
    )


def write_jsonl(path, records):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        for r in records:
            f.write(json.dumps(r, ensure_ascii=False) + "\n")


def write_json(path, obj):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(json.dumps(obj, ensure_ascii=False, indent=2) + "\n")


def build_sources_and_pages():
    blackpink, citizenlab = [], []
    index = []
    html_dir = ROOT / "pages" / "html"
    html_dir.mkdir(parents=True, exist_ok=True)
    english_urls = {}

    def add_page(url, name, record):
        index.append(dict(url=url, **record))

    n = 0
    for theme, sites in SOURCE_SITES.items():
        for i, site in enumerate(sites):
            url = f"https://www.{site}/" if i % 2 == 0 else f"https://{site}/articles/{theme}-{i}.html"
            paras = [english_text(theme, 3) for _ in range(3)]
            name = f"page{n:03d}.html"
            (html_dir / name).write_text(html_page(f"{theme.title()} page {i}", paras), encoding="utf-8")
            add_page(url, name, {"status": 200, "content_type": "text/html; charset=utf-8", "body_file": f"html/{name}"})
            english_urls.setdefault(theme, []).append(url)
            (blackpink if i % 3 == 0 else citizenlab).append(url)
            n += 1

    translations = set()
    foreign = [
        ("fr", "rights", "https://droitsdelhomme.fr/actualites", FRENCH["rights"], FRENCH_STOP, FRENCH_FILLER),
        ("fr", "rights", "https://liberte-presse.fr/", FRENCH["rights"], FRENCH_STOP, FRENCH_FILLER),
        ("fr", "religion", "https://temples-du-tibet.fr/", FRENCH["religion"], FRENCH_STOP, FRENCH_FILLER),
        ("fr", "religion", "https://meditation-paris.fr/blog", FRENCH["religion"], FRENCH_STOP, FRENCH_FILLER),
        ("es", "gambling", "https://casino-online.es/", SPANISH["gambling"], SPANISH_STOP, SPANISH_FILLER),
        ("es", "gambling", "https://apuestas-deportivas.com.mx/", SPANISH["gambling"], SPANISH_STOP, SPANISH_FILLER),
    ]
    for lang, theme, url, vocab, stop, filler in foreign:
        paras = [foreign_text(vocab, stop, filler, 4) for _ in range(3)]
        name = f"page{n:03d}.html"
        (html_dir / name).write_text(html_page(" ".join(list(vocab)[:2]).capitalize(), paras), encoding="utf-8")
        add_page(url, name, {"status": 200, "content_type": "text/html; charset=utf-8", "body_file": f"html/{name}"})
        for src, dst in list(vocab.items()) + list(filler.items()):
            translations.add((lang, src, dst))
        citizenlab.append(url)
        n += 1

    # Pages the sanitizer removes, one per rule.
    dead = [
        ("https://oldnews-archive.net/story/4411", {"status": 410}),
        ("https://brokenhost.info/", {"status": 530}),
        ("https://forsale-domain.com/", {"status": 200, "redirects": ["https://sedo.com/search/details/?domain=forsale-domain.com"]}),
        ("https://loop.example-redirect.org/", {"status": 200, "redirects": ["https://loop.example-redirect.org/a", "https://loop.example-redirect.org/"], "redirect_loop": True}),
        ("https://gone-forever.net/", {"transport_error": {"tag": "dns", "code": 6}}),
        ("https://tinyblog.org/", {"status": 200}),
        ("https://parkedname.com/", {"status": 200}),
        ("https://blocked-but-alive.org/", {"status": 403}),
    ]
    short = html_page("tiny", ["Coming soon."])
    parked = html_page("parkedname.com", ["This domain is for sale. Buy this domain today and start your project. " * 6])
    for url, rec in dead:
        if url.startswith("https://tinyblog"):
            name = f"page{n:03d}.html"
            (html_dir / name).write_text(short, encoding="utf-8")
            rec = dict(rec, body_file=f"html/{name}")
        elif url.startswith("https://parkedname"):
            name = f"page{n:03d}.html"
            (html_dir / name).write_text(parked, encoding="utf-8")
            rec = dict(rec, body_file=f"html/{name}")
        elif url.startswith("https://blocked-but-alive"):
            name = f"page{n:03d}.html"
            (html_dir / name).write_text(html_page("Access notice", [english_text("rights", 3) for _ in range(3)]), encoding="utf-8")
            rec = dict(rec, body_file=f"html/{name}")
        add_page(url, None, rec)
        blackpink.append(url)
        n += 1

    # One URL on both lists: loaded once.
    blackpink.append(citizenlab[0])

    sources = ROOT / "sources"
    sources.mkdir(parents=True, exist_ok=True)
    (sources / "blackpink.txt").write_text(
        "# Synthetic list in the style of a community-maintained blocklist\n"
        + "".join(f"{u}\tblackpink\tblackpink\n" for u in blackpink), encoding="utf-8")
    (sources / "citizenlab.txt").write_text(
        "# Synthetic list in the style of a curated test list\n"
        + "".join(f"{u}\tglobal\tcitizenlab\n" for u in citizenlab), encoding="utf-8")
    write_jsonl(ROOT / "pages" / "index.jsonl", index)
    (ROOT / "clients").mkdir(parents=True, exist_ok=True)
    (ROOT / "clients" / "translation.tsv").write_text(
        "# lang\ttoken\tenglish\n" + "".join(f"{l}\t{s}\t{d}\n" for l, s, d in sorted(translations)),
        encoding="utf-8")
    return english_urls


def build_exchange(english_urls):
    def keywords(theme, method, topic_id):
        vocab = list(THEMES[theme])
        scores = [round(0.9 - 0.025 * i, 6) for i in range(30)]
        return {"type": "keywords", "method": method, "topic_id": topic_id,
                "keywords": [{"term": t, "score": s} for t, s in zip(vocab, scores)]}

    top2vec = [keywords("circumvention", "top2vec", 0), keywords("rights", "top2vec", 1),
               keywords("gambling", "top2vec", 2)]
    bertopic = [keywords("religion", "bertopic", 0), keywords("rights", "bertopic", 1)]
    # top2vec keyword order puts vpn/proxy and activist/protest first so the
    # recorded trends replies apply.
    top2vec[1]["keywords"][0]["term"], top2vec[1]["keywords"][1]["term"] = "activist", "protest"
    top2vec[2]["keywords"][0]["term"], top2vec[2]["keywords"][1]["term"] = "casino", "poker"

    def assignments(method, pairs):
        out = []
        for theme, topic in pairs:
            for i, url in enumerate(english_urls[theme]):
                out.append({"type": "assignment", "url": url, "method": method, "topic_id": topic,
                            "score": round(0.95 - 0.05 * i, 6)})
        return out

    t2v = top2vec + assignments("top2vec", [("circumvention", 0), ("rights", 1), ("gambling", 2)])
    t2v.append({"type": "assignment", "url": english_urls["religion"][0], "method": "top2vec",
                "topic_id": -1, "score": 0.0})
    bt = bertopic + assignments("bertopic", [("religion", 0), ("rights", 1)])
    bt.append({"type": "assignment", "url": english_urls["gambling"][0], "method": "bertopic",
               "topic_id": -1, "score": 0.0})
    write_jsonl(ROOT / "topics" / "top2vec.jsonl", t2v)
    write_jsonl(ROOT / "topics" / "bertopic.jsonl", bt)


def build_clients():
    llm = []
    needles = {"rights": "'activist'", "circumvention": "'vpn'", "religion": "'monk'", "gambling": "'casino'"}
    for theme, needle in needles.items():
        words = LLM_EXPANSIONS[theme]
        reply = "Here are related keywords:\n" + "\n".join(f"{i + 1}. {w}" for i, w in enumerate(words))
        llm.append({"prompt_contains": [needle], "response": reply})
    generic = ["internet censorship", "blocked websites", "online freedom", "digital rights"]
    llm.append({"prompt_contains": ["LIST_OF_WORDS"],
                "response": "[" + ", ".join(f"'{w}'" for w in generic) + "]"})
    write_jsonl(ROOT / "clients" / "llm_replay.jsonl", llm)

    trends = []
    for kw, (top, rising) in TRENDS.items():
        trends.append({"keyword": kw, "window": "today 5-y", "top": top, "rising": rising})
    write_jsonl(ROOT / "clients" / "trends_replay.jsonl", trends)


def build_search_index():
    pages = []
    index_urls = {}
    for theme, sites in INDEX_SITES.items():
        extra = [w for phrase in LLM_EXPANSIONS[theme] for w in phrase.split()]
        for kw, (top, rising) in TRENDS.items():
            if kw in THEMES[theme]:
                extra += [w for phrase in top + rising for w in phrase.split()]
        for i, site in enumerate(sites):
            for j in range(2):
                url = f"https://www.{site}/" if j == 0 else f"https://{site}/{theme}/post-{i}-{j}.html"
                # Every theme word appears at least once so short queries match.
                text = " ".join(THEMES[theme]) + " " + english_text(theme, 6, extra) + " " + " ".join(FILLER)
                pages.append({"url": url, "text": text})
                index_urls.setdefault(theme, []).append(url)
    write_jsonl(ROOT / "search" / "index.jsonl", pages)
    return index_urls


def pipeline_scenario(index_urls):
    domains = []
    ip = 10
    for theme, sites in INDEX_SITES.items():
        for site in sites:
            d = {"name": site, "ip": f"198.51.100.{ip}", "origin": {"status": 200, "delay_ms": 120},
                 "urls": [u for u in index_urls[theme] if site in u.split("/")[2]]}
            ip += 1
            domains.append(d)
    by_name = {d["name"]: d for d in domains}
    by_name["lotteryresults.info"]["origin"] = {"dead": True}
    by_name["scripturestudy.com"]["urls"][1] = {"url": by_name["scripturestudy.com"]["urls"][1], "status": 404}

    censored = []
    for site in INDEX_SITES["circumvention"][:7]:
        censored.append({"match": {"pld": site}, "mechanism": "dns_nxdomain"})
    for site in INDEX_SITES["religion"][:4]:
        censored.append({"match": {"pld": site}, "mechanism": "dns_forged_ip"})
    for site in INDEX_SITES["rights"][:3]:
        censored.append({"match": {"pld": site}, "mechanism": "tcp_rst"})
    censored.append({"match": {"exact": "www.casinoreviews.com"}, "mechanism": "http_block_page", "status": 451})
    censored.append({"match": {"pld": "bettingtips.co.uk"}, "mechanism": "throttle", "delay_ms": 45000})
    censored.append({"match": {"pld": "pokerschool.net"}, "mechanism": "tcp_rst", "probability": 0.3})
    partial = [p for p in censored[:5]] + [{"match": {"pld": INDEX_SITES["rights"][0]}, "mechanism": "tcp_rst"}]
    bots = {"match": {"pld": "amnestyreports.org"}, "mechanism": "server_side_403_bots"}

    free = ["us-east", "de-fra", "nl-ams", "ca-tor", "jp-tyo"]
    vantages = [{"id": v, "base_latency_ms": 40 + 10 * i, "flakiness": 0.005, "seed": 100 + i, "policies": [bots]}
                for i, v in enumerate(free)]
    vantages.append({"id": "cn-bj", "base_latency_ms": 180, "flakiness": 0.005, "seed": 201,
                     "policies": [bots] + censored})
    vantages.append({"id": "cn-sh", "base_latency_ms": 170, "flakiness": 0.005, "seed": 202,
                     "policies": [bots] + partial})
    return {"seed": 11, "tool_user_agent": "probegen/1.0 (+censorship measurement research)", "n_runs": 50,
            "run_interval_hours": 72, "start": "2024-01-01T00:00:00Z", "domains": domains,
            "vantages": vantages, "baseline_vantages": free}


def acceptance_scenario():
    """20 domains: 5 DNS + 2 RST at the censored vantage, 3 dead, 2 bot-403, 8 clean."""
    names = [f"site{i:02d}.com" for i in range(20)]
    domains = []
    for i, n in enumerate(names):
        d = {"name": n, "ip": f"203.0.113.{i + 1}", "origin": {"status": 200, "delay_ms": 80},
             "urls": [f"https://{n}/", f"https://{n}/page/{i}"]}
        if 7 <= i < 10:
            d["origin"] = {"dead": True}
        domains.append(d)
    bots = [{"match": {"pld": names[i]}, "mechanism": "server_side_403_bots"} for i in (10, 11)]
    censored = [{"match": {"pld": names[i]}, "mechanism": "dns_nxdomain"} for i in range(5)]
    censored += [{"match": {"pld": names[i]}, "mechanism": "tcp_rst"} for i in (5, 6)]
    free = [f"free{i}" for i in range(1, 6)]
    vantages = [{"id": v, "base_latency_ms": 50, "flakiness": 0.02, "seed": 10 + i, "policies": bots}
                for i, v in enumerate(free)]
    vantages.append({"id": "censored", "base_latency_ms": 150, "flakiness": 0.02, "seed": 99,
                     "policies": bots + censored})
    return {"seed": 2024, "n_runs": 50, "run_interval_hours": 72, "start": "2024-01-01T00:00:00Z",
            "domains": domains, "vantages": vantages, "baseline_vantages": free}


def main():
    english_urls = build_sources_and_pages()
    build_exchange(english_urls)
    build_clients()
    index_urls = build_search_index()
    write_json(ROOT / "simnet" / "pipeline_scenario.json", pipeline_scenario(index_urls))
    write_json(ROOT / "simnet" / "acceptance_scenario.json", acceptance_scenario())

    write_json(ROOT / "pipeline.json", {
        "run_dir": "../run/pipeline",
        "master_seed": 7,
        "parallelism": 4,
        "thresholds": {"consistency": 0.95, "min_chars": 300, "timeout_s": 30, "min_span_days": 120},
        "inputs": {"source_lists": ["sources/blackpink.txt", "sources/citizenlab.txt"], "pages": "pages",
                   "scenario": "simnet/pipeline_scenario.json"},
        "topics": {"K": 4, "iters": 300, "keywords_per_topic": 30,
                   "exchange_files": ["topics/top2vec.jsonl", "topics/bertopic.jsonl"]},
        "queries": {"per_topic_budget": 6},
        "clients": {
            "translation": {"mode": "fixture", "fixture": "clients/translation.tsv"},
            "llm": {"mode": "fixture", "fixture": "clients/llm_replay.jsonl", "key_env": "OPENAI_API_KEY"},
            "trends": {"mode": "fixture", "fixture": "clients/trends_replay.jsonl"},
            "search": {"mode": "fixture", "index": "search/index.jsonl", "key_env": "PROBEGEN_SEARCH_KEY",
                       "engine_env": "PROBEGEN_SEARCH_ENGINE"},
        },
        "probe": {"n_runs": 50, "transport": "simnet"},
        "vantages": ["us-east", "de-fra", "nl-ams", "ca-tor", "jp-tyo", "cn-bj", "cn-sh"],
        "baseline_vantages": ["us-east", "de-fra", "nl-ams", "ca-tor", "jp-tyo"],
    })
    write_json(ROOT / "simnet" / "config.json", {
        "run_dir": "../../run/simnet",
        "master_seed": 3,
        "inputs": {"scenario": "acceptance_scenario.json"},
        "aggregate": {"outcomes_from": "simulate"},
    })


if __name__ == "__main__":
    main()
