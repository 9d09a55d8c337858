DEBUG = True
SECRET_KEY = '<insert here>'
LAB_DB_PATH = '<insert here>'
LAB_OUTPUT_ROOT = '<insert here>'
LAB_RECORD_RUNS = False
ALLOWED_HOSTS = []
STATIC_URL = '/static/'
MEDIA_URL = '/media/'
