"""
Read-only JSON API over an analysis bundle.

All endpoints are GETs over the immutable in-memory bundle; responses
are deterministic, carry ETag/Cache-Control headers, and honor
If-None-Match. The server can also host a static asset directory
(the explorer UI build) at /.

Endpoints:
  /api/meta                       config echo, Q, mean silhouette, k
  /api/network[?cluster|page]     nodes and links, paginated by cluster
  /api/clusters                   id, size, silhouette, label, tau
  /api/clusters/{id}/labels       the full nine-list label set
  /api/clusters/{id}/summary      ?ranker=energy|gtf|gtf_idf&k=N
  /api/clusters/{id}/citers       citing records (uid, year, title)
  /api/nodes/{key}/history        yearly counts, bursts, centrality, sigma
  /api/timeline                   per-cluster timeline layout data
"""
from __future__ import annotations

import hashlib
import json
import logging
import mimetypes
import re
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, unquote, urlparse

from .summarize import RANKERS

__all__ = ["create_server", "serve"]

log = logging.getLogger(__name__)

_CACHE_CONTROL = "public, max-age=3600"


class ApiError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status
        self.message = message


def _int_param(params: dict, name: str, default: int | None) -> int | None:
    if name not in params:
        return default
    raw = params[name][-1]
    try:
        value = int(raw)
    except ValueError:
        raise ApiError(400, f"parameter {name!r} must be an integer, got {raw!r}")
    if value < 0:
        raise ApiError(400, f"parameter {name!r} must be >= 0")
    return value


class BundleApi:
    """Pure request->payload mapping over a bundle; separate from the
    HTTP plumbing so it is directly unit-testable."""

    def __init__(self, bundle: dict):
        self.bundle = bundle
        self.assignment: dict[str, int] = bundle["partition"]["assignment"]
        self.k: int = bundle["partition"]["k"]
        self.nodes = {n["key"]: n for n in bundle["network"]["nodes"]}
        self.default_k = bundle["config"]["summary_k"]

    def _cluster_or_404(self, cid_text: str) -> int:
        try:
            cid = int(cid_text)
        except ValueError:
            raise ApiError(400, f"cluster id must be an integer, got {cid_text!r}")
        if not (0 <= cid < self.k):
            raise ApiError(404, f"unknown cluster {cid}")
        return cid

    def meta(self, params: dict) -> dict:
        bundle = self.bundle
        return {
            "bundle_version": bundle["bundle_version"],
            "config": bundle["config"],
            "k": self.k,
            "modularity_q": bundle["partition_metrics"]["modularity_q"],
            "mean_silhouette": bundle["partition_metrics"]["mean_silhouette"],
            "ncut": bundle["partition"]["ncut"],
            "n_nodes": len(bundle["network"]["nodes"]),
            "n_links": len(bundle["network"]["links"]),
        }

    def network(self, params: dict) -> dict:
        cluster = _int_param(params, "cluster", None)
        if cluster is not None and not (0 <= cluster < self.k):
            raise ApiError(404, f"unknown cluster {cluster}")
        if cluster is not None:
            included = [cluster]
            page, per_page = 0, 1
        else:
            per_page = _int_param(params, "per_page", self.k) or self.k
            page = _int_param(params, "page", 0)
            included = list(range(self.k))[page * per_page : (page + 1) * per_page]
        keep = set(included)
        metrics = self.bundle["node_metrics"]
        bursts = self.bundle["bursts"]
        sigmas = self.bundle["sigma"]
        nodes = [
            {
                "key": n["key"],
                "cluster": self.assignment[n["key"]],
                "citations": sum(n["per_year_counts"].values()),
                "first_cited_year": n["first_cited_year"],
                "betweenness": metrics["betweenness"][n["key"]],
                "silhouette": metrics["silhouette"][n["key"]],
                "burstness": bursts[n["key"]]["burstness"],
                "sigma": sigmas[n["key"]],
            }
            for n in self.bundle["network"]["nodes"]
            if self.assignment[n["key"]] in keep
        ]
        kept_keys = {n["key"] for n in nodes}
        links = [
            l
            for l in self.bundle["network"]["links"]
            if l["i"] in kept_keys and l["j"] in kept_keys
        ]
        return {
            "unit": self.bundle["network"]["unit"],
            "measure": self.bundle["network"]["measure"],
            "clusters_included": included,
            "page": page,
            "per_page": per_page,
            "total_clusters": self.k,
            "nodes": nodes,
            "links": links,
        }

    def clusters(self, params: dict) -> list:
        sizes: dict[int, int] = {cid: 0 for cid in range(self.k)}
        for cid in self.assignment.values():
            sizes[cid] += 1
        sil = self.bundle["partition_metrics"]["per_cluster_silhouette"]
        spans = self.bundle["time_spans"]
        labels = self.bundle["labels"]
        return [
            {
                "id": cid,
                "size": sizes[cid],
                "silhouette": sil[str(cid)],
                "label": labels[str(cid)]["display_label"],
                "alt_label": labels[str(cid)]["alt_label"],
                "tau": None if spans[str(cid)] is None else spans[str(cid)]["tau"],
            }
            for cid in range(self.k)
        ]

    def cluster_labels(self, cid_text: str, params: dict) -> dict:
        cid = self._cluster_or_404(cid_text)
        return self.bundle["labels"][str(cid)]

    def cluster_summary(self, cid_text: str, params: dict) -> dict:
        cid = self._cluster_or_404(cid_text)
        ranker = params.get("ranker", [self.bundle["config"]["summary_ranker"]])[-1]
        if ranker not in RANKERS:
            raise ApiError(400, f"unknown ranker {ranker!r}")
        k = _int_param(params, "k", self.default_k)
        pool = self.bundle["summary_pool"][str(cid)][ranker]
        return {
            "cluster_id": cid,
            "ranker": ranker,
            "k": k,
            "sentences": pool[:k],
        }

    def cluster_citers(self, cid_text: str, params: dict) -> dict:
        cid = self._cluster_or_404(cid_text)
        return {"cluster_id": cid, "citers": self.bundle["citers"][str(cid)]}

    def node_history(self, key: str, params: dict) -> dict:
        if key not in self.nodes:
            raise ApiError(404, f"unknown node {key!r}")
        node = self.nodes[key]
        burst = self.bundle["bursts"][key]
        return {
            "key": key,
            "cluster": self.assignment[key],
            "first_cited_year": node["first_cited_year"],
            "per_year_counts": node["per_year_counts"],
            "burst_intervals": burst["intervals"],
            "burstness": burst["burstness"],
            "centrality": self.bundle["node_metrics"]["betweenness"][key],
            "sigma": self.bundle["sigma"][key],
        }

    def timeline(self, params: dict) -> dict:
        return self.bundle["timeline"]


_ROUTES = [
    (re.compile(r"^/api/meta$"), "meta", ()),
    (re.compile(r"^/api/network$"), "network", ()),
    (re.compile(r"^/api/clusters$"), "clusters", ()),
    (re.compile(r"^/api/clusters/([^/]+)/labels$"), "cluster_labels", (0,)),
    (re.compile(r"^/api/clusters/([^/]+)/summary$"), "cluster_summary", (0,)),
    (re.compile(r"^/api/clusters/([^/]+)/citers$"), "cluster_citers", (0,)),
    (re.compile(r"^/api/nodes/(.+)/history$"), "node_history", (0,)),
    (re.compile(r"^/api/timeline$"), "timeline", ()),
]


def dispatch(api: BundleApi, path: str, params: dict):
    for pattern, method, groups in _ROUTES:
        m = pattern.match(path)
        if not m:
            continue
        args = [unquote(m.group(i + 1)) for i in groups]
        return getattr(api, method)(*args, params)
    raise ApiError(404, f"no such endpoint {path!r}")


class _Handler(BaseHTTPRequestHandler):
    api: BundleApi
    static_dir: Path | None = None

    def do_GET(self):  # noqa: N802 (http.server naming)
        parsed = urlparse(self.path)
        try:
            if parsed.path.startswith("/api/"):
                payload = dispatch(self.api, parsed.path, parse_qs(parsed.query))
                self._send_json(200, payload)
            else:
                self._send_static(parsed.path)
        except ApiError as exc:
            self._send_json(exc.status, {"error": exc.message})
        except Exception:  # pragma: no cover - defensive
            log.exception("request %s failed", self.path)
            self._send_json(500, {"error": "internal server error"})

    def _send_json(self, status: int, payload) -> None:
        body = json.dumps(payload, ensure_ascii=False, sort_keys=True).encode("utf-8")
        etag = '"' + hashlib.sha256(body).hexdigest()[:32] + '"'
        if status == 200 and self.headers.get("If-None-Match") == etag:
            self.send_response(304)
            self.send_header("ETag", etag)
            self.end_headers()
            return
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Cache-Control", _CACHE_CONTROL)
        self.send_header("ETag", etag)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _send_static(self, path: str) -> None:
        if self.static_dir is None:
            raise ApiError(404, "no static assets configured; use /api/...")
        rel = unquote(path).lstrip("/") or "index.html"
        target = (self.static_dir / rel).resolve()
        if not str(target).startswith(str(self.static_dir.resolve())) or not target.is_file():
            raise ApiError(404, f"no such file {path!r}")
        body = target.read_bytes()
        ctype = mimetypes.guess_type(target.name)[0] or "application/octet-stream"
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Cache-Control", _CACHE_CONTROL)
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, fmt, *args):  # quiet by default; use logging
        log.debug("%s - %s", self.address_string(), fmt % args)


def create_server(
    bundle: dict, port: int = 0, static_dir: str | Path | None = None
) -> ThreadingHTTPServer:
    """Bind the read-only API server (port 0 picks a free port); the
    caller runs serve_forever()."""
    handler = type(
        "BoundHandler",
        (_Handler,),
        {
            "api": BundleApi(bundle),
            "static_dir": Path(static_dir) if static_dir else None,
        },
    )
    return ThreadingHTTPServer(("127.0.0.1", port), handler)


def serve(bundle: dict, port: int, static_dir: str | Path | None = None) -> None:
    """Blocking entry point used by the CLI."""
    server = create_server(bundle, port, static_dir)
    host, bound_port = server.server_address[:2]
    log.info("serving read-only API on http://%s:%s/api/meta", host, bound_port)
    print(f"cociter API listening on http://{host}:{bound_port}/ (Ctrl-C to stop)")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
