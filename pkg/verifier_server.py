"""
Waitress entry point for the certificate service; settings come from SERVER_CONFIG.
"""
import sys

from waitress import serve

from config import SERVER_CONFIG
from verifier_app import app


def main():
    url = f"http://{SERVER_CONFIG['host']}:{SERVER_CONFIG['port']}"
    print(f"[OK] Certificate service on {url} ({SERVER_CONFIG['threads']} threads), Ctrl+C to stop")
    try:
        serve(app, **SERVER_CONFIG)
    except KeyboardInterrupt:
        print("Server stopped.")
        sys.exit(0)


if __name__ == '__main__':
    main()
