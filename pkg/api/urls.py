from django.urls import path

from . import views

urlpatterns = [
    path('runs/', views.RunListView.as_view(), name='get_runs'),
    path('runs/<str:oid>/', views.RunDetailView.as_view(),
         name='get_run'),
]
