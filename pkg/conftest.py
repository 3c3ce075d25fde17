import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "hybridsim.settings")
django.setup()
