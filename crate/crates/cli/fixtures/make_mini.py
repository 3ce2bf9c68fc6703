"""Regenerates the `mini` fixture: two videos, five candidates each, a mock
joint table, and a synthetic study cohort. Output is deterministic."""

import json
import math
import os
import random
from pathlib import Path

from PIL import Image

ROOT = Path(__file__).resolve().parent / "mini"
FRAMES = 4
W, H = 64, 48

VIDEOS = {
    "vid01": {
        "question": "What is the speaker mainly explaining?",
        "options": [("A", "a sorting algorithm"), ("B", "a cooking recipe"), ("C", "a traffic rule")],
        "truth": "A",
        "summaries": [
            "the speaker walks through merge sort on a whiteboard",
            "a lecture about splitting arrays and merging sorted halves",
            "someone talks in front of a board with numbers",
            "a person explains recursion using colored cards",
            "a short clip of a classroom with a projector",
        ],
        "color": (200, 60, 60),
    },
    "vid02": {
        "question": "Why did the cyclist stop?",
        "options": [("A", "a red light"), ("B", "a flat tire"), ("C", "a phone call")],
        "truth": "A",
        "summaries": [
            "a cyclist halts at a red signal before a crosswalk",
            "traffic waits while the light turns red at the junction",
            "a bicycle rides down a busy street at noon",
            "pedestrians cross while a rider brakes near the signal",
            "a street scene with cars and a tall building",
        ],
        "color": (60, 120, 200),
    },
}
LABELS = ["A", "B", "C"]


def frames(vid, color):
    out = []
    d = ROOT / "dataset" / vid / "frames"
    d.mkdir(parents=True, exist_ok=True)
    for i in range(FRAMES):
        img = Image.new("RGB", (W, H))
        px = img.load()
        for y in range(H):
            for x in range(W):
                px[x, y] = ((x * 4 + i * 20) % 256, (y * 5) % 256, color[2])
        for y in range(8 + 4 * i, 20 + 4 * i):
            for x in range(10 + 6 * i, 26 + 6 * i):
                px[x, y] = color
        name = f"frame_{i:03d}.png"
        img.save(d / name)
        out.append(f"frames/{name}")
    return out


def joint(rng):
    """P(v) uniform; P(t | v) favours the video's own summaries; P(y | v, t)
    favours the truth label more for informative summaries."""
    videos = list(VIDEOS)
    summaries = [s for v in videos for s in VIDEOS[v]["summaries"]]
    entries = []
    for vi, v in enumerate(videos):
        own = set(VIDEOS[v]["summaries"])
        t_w = [rng.uniform(1.0, 4.0) if s in own else rng.uniform(0.05, 0.6) for s in summaries]
        zt = sum(t_w)
        for t, tw in zip(summaries, t_w):
            y_w = [rng.uniform(0.2, 3.0) for _ in LABELS]
            zy = sum(y_w)
            for y, yw in zip(LABELS, y_w):
                entries.append({"video": v, "summary": t, "label": y, "p": 0.5 * tw / zt * yw / zy})
    total = sum(e["p"] for e in entries)
    for e in entries:
        e["p"] /= total
    return {
        "videos": videos,
        "summaries": summaries,
        "labels": LABELS,
        "video_mask": "uninformative",
        "text_mask": "uninformative",
        "entries": entries,
    }


def scores(spec):
    """Grounding ln P(t|v)/P(t) and utility ln P(y|t)/P(y) per (video, summary)."""
    p = {(e["video"], e["summary"], e["label"]): e["p"] for e in spec["entries"]}
    V, T, Y = spec["videos"], spec["summaries"], spec["labels"]
    pv = {v: sum(p[v, t, y] for t in T for y in Y) for v in V}
    pt = {t: sum(p[v, t, y] for v in V for y in Y) for t in T}
    py = {y: sum(p[v, t, y] for v in V for t in T) for y in Y}
    out = {}
    for v in V:
        truth = VIDEOS[v]["truth"]
        for t in VIDEOS[v]["summaries"]:
            ptv = sum(p[v, t, y] for y in Y) / pv[v]
            pyt = sum(p[w, t, truth] for w in V) / pt[t]
            out[v, t] = (math.log(ptv / pt[t]), math.log(pyt / py[truth]))
    return out


def dominated(sc, key, keys):
    g, u = sc[key]
    return any(sc[k][0] >= g and sc[k][1] >= u and sc[k] != sc[key] for k in keys)


def write_jsonl(path, rows):
    with open(path, "w") as f:
        for r in rows:
            f.write(json.dumps(r) + "\n")


def cohort(rng):
    """Correct counts are planted per condition. Max-U participants see 20
    stimuli: 19 integer counts out of 10 cannot give 37.89 +- 10.04 (the sum
    and the sum of squares would need different parity), out of 20 they can."""
    plan = {
        "video_only": (10, [2, 3, 1, 4, 2, 3, 2, 1, 3, 2, 4, 2]),
        "naive": (10, [3, 2, 4, 3, 2, 5, 3, 1, 4, 3, 2]),
        "max_g": (10, [4, 3, 3, 4, 2, 4, 5, 3, 3, 4]),
        "max_u": (20, [7, 9, 5, 8, 12, 7, 6, 9, 7, 4, 8, 9, 11, 7, 5, 9, 6, 7, 8]),
    }
    mean_rt = {"video_only": 19.0, "naive": 4.8, "max_g": 6.1, "max_u": 2.4}
    records, pid = [], 0
    for cond, (n_stim, counts) in plan.items():
        for c in counts:
            pid += 1
            for s in range(n_stim):
                records.append(
                    {
                        "participant_id": f"p{pid:03d}",
                        "condition": cond,
                        "stimulus_id": f"{cond}-{s}" if cond != "video_only" else f"video-{s}",
                        "correct": s < c,
                        "response_time_s": round(mean_rt[cond] * rng.uniform(0.5, 1.5), 2),
                    }
                )
    stimuli = [
        {
            "stimulus_id": f"{cond}-{s}",
            "grounding": round(rng.uniform(-0.5, 2.0), 3),
            "utility": round(rng.uniform(-0.5, 1.5), 3),
            "word_count": rng.randint(8, 40),
        }
        for cond in ("naive", "max_g", "max_u")
        for s in range(20 if cond == "max_u" else 10)
    ]
    return records, stimuli


def main():
    rng = random.Random(20240611)
    spec = joint(rng)
    sc = scores(spec)
    for v, info in VIDEOS.items():
        d = ROOT / "dataset" / v
        paths = frames(v, info["color"])
        manifest = {
            "video_id": v,
            "frame_paths": paths,
            "frame_count": FRAMES,
            "duration_s": 12.0,
            "dataset_tag": "custom",
        }
        write_jsonl(d / "manifest.jsonl", [manifest])
        task = {
            "task_id": f"{v}-q0",
            "video_id": v,
            "question": info["question"],
            "options": [{"label": l, "text": t} for l, t in info["options"]],
            "truth_label": info["truth"],
        }
        write_jsonl(d / "tasks.jsonl", [task])
        keys = [(v, t) for t in info["summaries"]]
        # the naive pick is a strictly dominated candidate, the chain-of-thought one is the last
        naive = next(k for k in keys if dominated(sc, k, keys))
        cands = []
        for i, t in enumerate(info["summaries"]):
            c = {
                "candidate_id": f"{v}-c{i}",
                "video_id": v,
                "text": t,
                "temperature": [0.0, 0.5, 0.8, 1.0, 1.2][i],
                "source": "cot" if i == 4 else "sampled",
            }
            if (v, t) == naive:
                c["label"] = "naive"
            cands.append(c)
        write_jsonl(d / "candidates.jsonl", cands)
    with open(ROOT / "joint.json", "w") as f:
        json.dump(spec, f, indent=1)
        f.write("\n")
    records, stimuli = cohort(rng)
    write_jsonl(ROOT / "responses.jsonl", records)
    write_jsonl(ROOT / "stimuli.jsonl", stimuli)
    for (v, t), (g, u) in sorted(sc.items()):
        print(f"{v}\t{g:+.6f}\t{u:+.6f}\t{t}")


if __name__ == "__main__":
    main()
