from open_vlc.utils.config import setup_project_home

setup_project_home()

# Imported after setup_project_home, the .open-VLC folder must exist first
from .experiment import Experiment  # noqa: E402 ignore import order warning of flake8
