"""Optional bridge to an external algebra system for class-group certificates.

Disabled unless a helper command is configured.  The helper speaks a one-line
protocol on stdin/stdout:

    CL2 c0;c1;...;cn        ->  {"cl2_kf": int, "cl2_kf2": int}
    SUNITS c0;...;cn p1;p2  ->  {"s_units": [["1","0",...], ...]}

Each request runs the helper afresh with a hard timeout; a timeout or a
malformed response yields no certificate (condition 5 then reports skipped),
never a hang.  Responses are cached as JSON next to the certificate store.
"""

from __future__ import annotations

import json
import logging
import subprocess
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from .pipeline import CurveInput, GlobalCertificate

log = logging.getLogger(__name__)


@dataclass
class CasConfig:
    helper_cmd: Optional[List[str]] = None
    timeout: float = 60.0
    cache_dir: Optional[str] = None


class CasClient:
    def __init__(self, config: CasConfig) -> None:
        self.config = config

    def _cache_path(self, label: str) -> Optional[Path]:
        if not self.config.cache_dir:
            return None
        return Path(self.config.cache_dir) / f"{label}.json"

    def _ask(self, line: str) -> Optional[dict]:
        if not self.config.helper_cmd:
            return None
        try:
            proc = subprocess.run(
                self.config.helper_cmd,
                input=line + "\n",
                capture_output=True,
                text=True,
                timeout=self.config.timeout,
            )
        except (subprocess.TimeoutExpired, OSError) as err:
            log.warning("helper failed for %r: %s", line.split()[0], err)
            return None
        out = proc.stdout.strip().splitlines()
        if not out:
            log.warning("helper produced no output")
            return None
        try:
            return json.loads(out[0])
        except json.JSONDecodeError as err:
            log.warning("helper response is not JSON: %s", err)
            return None

    def fetch(self, curve: CurveInput, bad_primes: Sequence[int] = ()) -> Optional[GlobalCertificate]:
        cache = self._cache_path(curve.label)
        if cache is not None and cache.exists():
            try:
                return GlobalCertificate.from_json(json.loads(cache.read_text()))
            except (ValueError, KeyError) as err:
                log.warning("ignoring corrupt cached certificate %s: %s", cache, err)
        coeffs = ";".join(str(c) for c in curve.f.coeffs)
        cl2 = self._ask(f"CL2 {coeffs}")
        if not cl2 or "cl2_kf" not in cl2 or "cl2_kf2" not in cl2:
            return None
        s_units = None
        sresp = self._ask(f"SUNITS {coeffs} {';'.join(str(p) for p in bad_primes)}")
        if sresp and isinstance(sresp.get("s_units"), list):
            try:
                s_units = [[Fraction(str(c)) for c in row] for row in sresp["s_units"]]
            except (ValueError, ZeroDivisionError):
                log.warning("malformed S-unit coordinates; dropping them")
                s_units = None
        cert = GlobalCertificate(
            label=curve.label,
            cl2_kf=int(cl2["cl2_kf"]),
            cl2_kf2=int(cl2["cl2_kf2"]),
            s_units=s_units,
            source="helper:%s" % " ".join(self.config.helper_cmd or []),
        )
        if cache is not None:
            cache.parent.mkdir(parents=True, exist_ok=True)
            cache.write_text(json.dumps(cert.to_json(), indent=1))
        return cert
