#!/usr/bin/env python3
"""
Spherical-kit launcher.
Checks the environment, then hands the remaining arguments to the CLI.

    ./run_spherical.py --check-env
    ./run_spherical.py selftest --format table
"""
import argparse
import importlib
import logging
import os
import sys
from pathlib import Path

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
)
log = logging.getLogger("launcher")


class SphericalLauncher:
    modules = ["spherical_kit.rootdata", "spherical_kit.trigring", "spherical_kit.bottoms",
               "spherical_kit.intertwiners", "spherical_kit.casimir", "spherical_kit.spherical",
               "spherical_kit.orthogonality", "spherical_kit.oracle", "spherical_kit.cli"]

    def check_environment(self) -> bool:
        """Check imports, the .env file and the optional Redis cache."""
        log.info("Checking environment configuration...")
        ok = True

        if Path(".env").exists():
            from dotenv import load_dotenv
            load_dotenv()
            log.info("✓ .env loaded")
        else:
            log.warning("⚠ .env file not found (defaults apply)")

        for name in self.modules:
            try:
                importlib.import_module(name)
                log.info("✓ %s imports OK", name)
            except Exception as e:
                log.error("✗ %s import failed: %s", name, e)
                ok = False

        redis_url = os.getenv("REDIS_URL")
        if redis_url:
            try:
                import redis
                redis.from_url(redis_url, decode_responses=True).ping()
                log.info("✓ Redis connection successful")
            except Exception as e:
                log.warning("⚠ Redis connection failed (file cache will be used): %s", e)
        else:
            log.info("REDIS_URL not set, using the file cache")

        cache_dir = Path(os.getenv("SPHERICAL_CACHE_DIR", ".spherical_cache"))
        try:
            cache_dir.mkdir(parents=True, exist_ok=True)
            probe = cache_dir / ".probe"
            probe.write_text("ok")
            probe.unlink()
            log.info("✓ Cache directory %s is writable", cache_dir)
        except OSError as e:
            log.error("✗ Cache directory %s is not writable: %s", cache_dir, e)
            ok = False
        return ok


def main():
    parser = argparse.ArgumentParser(description="Spherical-kit launcher", add_help=False)
    parser.add_argument("--check-env", action="store_true", help="Only check environment")
    args, rest = parser.parse_known_args()

    launcher = SphericalLauncher()
    if args.check_env:
        sys.exit(0 if launcher.check_environment() else 1)

    from spherical_kit.cli import main as cli_main
    sys.exit(cli_main(rest))


if __name__ == "__main__":
    main()
