import os
from pathlib import Path
from dotenv import load_dotenv

BASE_DIR = Path(__file__).resolve().parent.parent
load_dotenv(BASE_DIR / ".env")

SECRET_KEY = os.getenv("SECRET_KEY", "greens-lab-insecure-local-key")
DEBUG = os.getenv("DEBUG", "False").lower() == "true"
ALLOWED_HOSTS = []

INSTALLED_APPS = [
    'core',
    'graphs',
    'spectral',
    'chebyshev',
    'closed_forms',
    'products',
    'walks',
    'cli',
]

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / os.getenv("GREENS_DB_NAME", "db.sqlite3"),
    }
}

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True
DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# Eigensolver used by the spectral oracle: "jacobi" (cyclic rotations) or "lapack".
GREENS_EIGENSOLVER = os.getenv("GREENS_EIGENSOLVER", "jacobi")
GREENS_JACOBI_THRESHOLD = float(os.getenv("GREENS_JACOBI_THRESHOLD", 1e-14))
GREENS_JACOBI_MAX_SWEEPS = int(os.getenv("GREENS_JACOBI_MAX_SWEEPS", 100))

GREENS_EIGEN_RESIDUAL_TOL = float(os.getenv("GREENS_EIGEN_RESIDUAL_TOL", 1e-10))
GREENS_SYMMETRY_TOL = float(os.getenv("GREENS_SYMMETRY_TOL", 1e-10))
GREENS_IMAG_DISCARD_TOL = float(os.getenv("GREENS_IMAG_DISCARD_TOL", 1e-12))
GREENS_IMAG_RESIDUE_TOL = float(os.getenv("GREENS_IMAG_RESIDUE_TOL", 1e-9))
GREENS_POLE_TOL = float(os.getenv("GREENS_POLE_TOL", 1e-12))
GREENS_CHEB_THETA_EPS = float(os.getenv("GREENS_CHEB_THETA_EPS", 1e-8))

GREENS_SERIES_MAX_TERMS = int(os.getenv("GREENS_SERIES_MAX_TERMS", 200000))
GREENS_HITTING_ORACLE_MAX_STATES = int(os.getenv("GREENS_HITTING_ORACLE_MAX_STATES", 3000))

GREENS_CSV_DIGITS = int(os.getenv("GREENS_CSV_DIGITS", 15))
GREENS_THREADS = int(os.getenv("GREENS_THREADS", 1))
GREENS_BENCH_SCALING_SLACK = float(os.getenv("GREENS_BENCH_SCALING_SLACK", 1.3))

GREENS_LOG_LEVEL = os.getenv("GREENS_LOG_LEVEL", "INFO")

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        '': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': True,
        },
        'django': {
            'handlers': ['console'],
            'level': 'INFO',
            'propagate': False,
        },
        **{
            app: {
                'handlers': ['console'],
                'level': GREENS_LOG_LEVEL,
                'propagate': False,
            }
            for app in ('graphs', 'spectral', 'chebyshev', 'closed_forms', 'products', 'walks', 'cli')
        },
    },
}
